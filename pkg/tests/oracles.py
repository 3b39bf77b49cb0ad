"""Independent reference computations used by the test suite.

Nothing here imports the standard-basis engine: quotient dimensions come
from plain linear algebra on truncated polynomial spaces, and the gamma
tables are a second, separately typed encoding.
"""

from fractions import Fraction

from equisingular.polyring import Poly, partial_derivative


def _rank(rows, ncols):
    """Rank of a list of sparse rows {col: Fraction} by exact elimination."""
    pivots = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col not in pivots:
                pivots[col] = row
                rank += 1
                break
            prow = pivots[col]
            factor = row[col] / prow[col]
            for c, v in prow.items():
                nv = row.get(c, 0) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
    return rank


def truncated_quotient_dimension(generators, n):
    """dim Q[x,y] / (I + m^n), by rank of the multiples of the generators."""
    monos = [(i, d - i) for d in range(n) for i in range(d + 1)]
    index = {m: k for k, m in enumerate(monos)}
    rows = []
    for g in generators:
        for (a, b) in monos:
            row = {}
            for (i, j), c in g.items():
                m = (i + a, j + b)
                if m in index:
                    row[index[m]] = Fraction(c)
            if row:
                rows.append(row)
    return len(monos) - _rank(rows, len(monos))


def oracle_quotient_dimension(generators, max_n=40):
    """dim O/I for an m-primary ideal, via stabilisation of the truncations.

    If the truncated dimensions agree for n and n+1 then m^n lies in
    I + m^(n+1), hence in I by Nakayama, so the common value is dim O/I.
    """
    prev = truncated_quotient_dimension(generators, 1)
    for n in range(2, max_n + 1):
        cur = truncated_quotient_dimension(generators, n)
        if cur == prev:
            return cur
        prev = cur
    raise RuntimeError("no stabilisation; ideal not m-primary?")


def oracle_milnor(f: Poly) -> int:
    return oracle_quotient_dimension([partial_derivative(f, "x"), partial_derivative(f, "y")])


def oracle_tjurina(f: Poly) -> int:
    return oracle_quotient_dimension([f, partial_derivative(f, "x"), partial_derivative(f, "y")])


# second encoding of the gamma tables, row by row

F = Fraction


def product_rows():
    """(predicate on (g1, g2), gamma as a function of (g1, g2, alpha))."""
    return [
        (lambda g1, g2: g1 == 0 and g2 == 0, lambda g1, g2, al: F(1, 24)),
        (lambda g1, g2: g1 == 1 and g2 == 0, lambda g1, g2, al: F(1) / max(32, 2 * al)),
        (lambda g1, g2: g1 >= 2 and g2 == 0, lambda g1, g2, al: F(1) / max(24 + 16 * g1, 4 * g1 * al)),
        (lambda g1, g2: g1 == 1 and g2 == 1, lambda g1, g2, al: F(1) / max(32, 2 * al, 2 / al)),
        (
            lambda g1, g2: g1 >= 2 and g2 >= 1,
            lambda g1, g2, al: F(1) / max(24 + 16 * g1 + 16 * g2, 4 * g1 * al, 4 * g2 / al),
        ),
    ]


def ruled_rows():
    return [
        (lambda g, e: g == 0 and e == 0, lambda g, e, al: F(1, 24)),
        (lambda g, e: g == 1 and e == 0, lambda g, e, al: F(1) / max(24, 2 * al)),
        (
            lambda g, e: g == 1 and e == -1,
            lambda g, e, al: F(1) / max(min(30 + 16 / al + 4 * al, 40 + 9 * al), F(13, 2) * al),
        ),
        (lambda g, e: g >= 2 and e == 0, lambda g, e, al: F(1) / max(24 + 16 * g, 4 * g * al)),
        (
            lambda g, e: g >= 2 and e < 0,
            lambda g, e, al: F(1)
            / max(min(24 + 16 * g - 9 * e * al, 18 + 16 * g - 9 * e * al - 16 / (e * al)), 4 * g * al - 9 * e * al),
        ),
    ]
