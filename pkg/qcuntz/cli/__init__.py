from qcuntz.cli.commands import COMMANDS, make_report, overall_status
from qcuntz.cli.main import main
