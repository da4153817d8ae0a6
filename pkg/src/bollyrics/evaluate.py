"""Inter-annotator agreement arithmetic for human evaluation results.

Implements the multi-rater kappa statistic (Fleiss 1971) and the
strict-majority "makes sense" rate over an N items x n raters label matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import CorpusFormatError


@dataclass(frozen=True)
class AnnotationMatrix:
    """Categorical labels: ``data[item][rater]`` indexes into ``categories``."""

    categories: tuple[str, ...]
    data: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        k, n_items = len(self.categories), len(self.data)
        if k < 2:
            raise ValueError("need at least 2 categories")
        if n_items < 1:
            raise ValueError("need at least 1 item")
        n = len(self.data[0])
        if n < 2:
            raise ValueError("need at least 2 raters")
        for row in self.data:
            if len(row) != n:
                raise ValueError("ragged annotation matrix")
            for cell in row:
                if not 0 <= cell < k:
                    raise ValueError(f"category index {cell} out of range")

    @property
    def n_items(self) -> int:
        return len(self.data)

    @property
    def n_raters(self) -> int:
        return len(self.data[0])

    def category_counts(self, row: tuple[int, ...]) -> list[int]:
        counts = [0] * len(self.categories)
        for cell in row:
            counts[cell] += 1
        return counts


def fleiss_kappa(matrix: AnnotationMatrix) -> float:
    """Chance-corrected agreement for n raters over k categories.

    Per-item agreement is (sum_j n_ij^2 - n) / (n (n - 1)); chance agreement
    is the sum of squared pooled category proportions; kappa is their
    normalized difference.  Undefined (raises) when every rating in the
    matrix falls in one category, since chance agreement is then 1.
    """
    n = matrix.n_raters
    pooled = [0] * len(matrix.categories)
    agreement_sum = 0.0
    for row in matrix.data:
        counts = matrix.category_counts(row)
        for j, c in enumerate(counts):
            pooled[j] += c
        agreement_sum += (sum(c * c for c in counts) - n) / (n * (n - 1))
    p_bar = agreement_sum / matrix.n_items
    total = n * matrix.n_items
    p_e = sum((c / total) ** 2 for c in pooled)
    if p_e == 1.0:
        raise ValueError("kappa undefined: all ratings fall in a single category")
    return (p_bar - p_e) / (1.0 - p_e)


def makes_sense_rate(matrix: AnnotationMatrix, positive_category: int = 0) -> float:
    """Fraction of items labeled positive by a strict majority of raters.

    "More than half" is strict: with 4 raters an item needs at least 3
    positive votes; exactly 2 does not count.
    """
    if not 0 <= positive_category < len(matrix.categories):
        raise ValueError(f"positive_category {positive_category} out of range")
    n = matrix.n_raters
    positives = sum(
        1 for row in matrix.data if sum(1 for cell in row if cell == positive_category) * 2 > n
    )
    return positives / matrix.n_items


def load_annotations(path: str | Path) -> AnnotationMatrix:
    """Read the annotations CSV: a ``#categories:`` header, then label rows."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CorpusFormatError(f"cannot read annotations {path}: {exc}") from exc
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if not lines:
        raise CorpusFormatError(f"{path}: empty annotations file")
    header = lines[0]
    if not header.startswith("#categories:"):
        raise CorpusFormatError(f"{path}: first line must start with '#categories:'")
    categories = tuple(c.strip() for c in header[len("#categories:") :].split(",") if c.strip())
    if len(categories) < 2:
        raise CorpusFormatError(f"{path}: need at least 2 declared categories")
    lookup = {c: i for i, c in enumerate(categories)}

    rows = []
    width = None
    for lineno, line in enumerate(lines[1:], start=2):
        cells = [c.strip() for c in line.split(",")]
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise CorpusFormatError(f"{path}:{lineno}: expected {width} labels, got {len(cells)}")
        row = []
        for label in cells:
            if label not in lookup:
                raise CorpusFormatError(f"{path}:{lineno}: unknown label {label!r}")
            row.append(lookup[label])
        rows.append(tuple(row))
    if not rows:
        raise CorpusFormatError(f"{path}: no annotation rows")
    try:
        return AnnotationMatrix(categories=categories, data=tuple(rows))
    except ValueError as exc:
        raise CorpusFormatError(f"{path}: {exc}") from exc
