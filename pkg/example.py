from qcuntz import build_generators, make_spec, make_truncation
from qcuntz.analysis import q_wold, relation_residuals, spectrum_check
from qcuntz.classify.equivalence import detect_parameters
from qcuntz.wick import wick_normal_form

spec = make_spec(family="unbounded", q=0.5, n=2, j=1, x=2.8)
family = build_generators(spec, make_truncation(L=3, s_min=-3, s_max=3))
print(family)

print(relation_residuals(family).model_dump(by_alias=True))
print(spectrum_check(family, 0).detail["eigenvalues"])

decomposition = q_wold(family.A[0], family.q, interior=family.basis.interior(2, [0]), x0=3.0)
print(decomposition.unbounded_blocks[0].x)
print(detect_parameters(family, x0=3.0))

print(wick_normal_form("a1* a2 + a1* a1", 2))
