"""Exact Gaussian elimination over a field object (``QQ`` or ``GF(p)``)."""

from __future__ import annotations

from collections.abc import Sequence


def rref(rows: Sequence[Sequence], field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    norm = field.normalize
    m = [[norm(field.convert(x)) for x in row] for row in rows]
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = field.inv(m[r][c])
        m[r] = [norm(x * inv) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def solve(rows: Sequence[Sequence], rhs: Sequence, field) -> list | None:
    """One solution of ``rows @ x = rhs`` with free variables set to zero, or ``None``."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    red, pivots = rref(aug, field)
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x


def nullspace(rows: Sequence[Sequence], ncols: int, field) -> list[list]:
    """A basis of ``{x : rows @ x = 0}``, one vector per free column."""
    red, pivots = rref(rows, field) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, c in zip(red, pivots):
            v[c] = field.normalize(-row[f])
        basis.append(v)
    return basis
