import logging
from typing import List, Optional

import numpy as np

from qcuntz.schemas.report import ConfluenceReport
from qcuntz.wick.normal_form import normal_form
from qcuntz.wick.symbols import GenSymbol, SymbolWord, format_word

logger = logging.getLogger(__name__)


def random_words(
    n: int,
    max_len: int,
    count: int,
    seed: int = 0,
    rng: Optional[np.random.Generator] = None,
) -> List[SymbolWord]:
    rng = rng or np.random.default_rng(seed)
    words = []
    for _ in range(count):
        length = int(rng.integers(0, max_len + 1))
        indices = rng.integers(1, n + 1, size=length)
        stars = rng.integers(0, 2, size=length)
        words.append(tuple(GenSymbol(int(k), bool(s)) for k, s in zip(indices, stars)))
    return words


def confluence_probe(n: int, max_len: int, trials: int, seed: int = 0) -> ConfluenceReport:
    """Compare leftmost and rightmost rewriting on random words."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    mismatches = []
    for word in random_words(n, max_len, trials, seed):
        if normal_form(word, "leftmost") != normal_form(word, "rightmost"):
            mismatches.append(format_word(word))
    if mismatches:
        logger.warning("Strategies disagree on %d words", len(mismatches))
    return ConfluenceReport(
        n=n,
        max_len=max_len,
        trials=trials,
        seed=seed,
        mismatches=len(mismatches),
        examples=mismatches[:10],
    )
