from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from errors import DegeneratePointError, VariableMismatchError
from exactpoly import MultiPoly, poly_ring, to_fraction, to_qq

Entry = int | Fraction | MultiPoly
Matrix = Sequence[Sequence[Entry]]


def _domain_matrix(rows: Matrix) -> tuple[DomainMatrix, tuple[str, ...] | None]:
    """Exact matrix over QQ, or over QQ[vars] when any entry is a polynomial."""
    rows = [list(r) for r in rows]
    shape = (len(rows), len(rows[0]) if rows else 0)
    polys = [e for r in rows for e in r if isinstance(e, MultiPoly)]
    if not polys:
        elements = [[to_qq(Fraction(e)) for e in r] for r in rows]
        return DomainMatrix(elements, shape, QQ), None
    vars = polys[0].vars
    if any(p.vars != vars for p in polys):
        raise VariableMismatchError("matrix entries use different variable lists")
    ring = poly_ring(vars)

    def lift(e: Entry):
        if isinstance(e, MultiPoly):
            return e.poly
        return ring.ground_new(to_qq(Fraction(e)))

    elements = [[lift(e) for e in r] for r in rows]
    return DomainMatrix(elements, shape, ring.to_domain()), vars


def _unwrap(element, vars: tuple[str, ...] | None) -> Fraction | MultiPoly:
    if vars is None:
        return to_fraction(element)
    return MultiPoly(vars, element)


def determinant(rows: Matrix) -> Fraction | MultiPoly:
    matrix, vars = _domain_matrix(rows)
    return _unwrap(matrix.det(), vars)


def solve(rows: Matrix, rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Unique solution of a square rational system."""
    matrix, vars = _domain_matrix(rows)
    if vars is not None:
        raise VariableMismatchError("solve() works on rational matrices only")
    if matrix.det() == QQ.zero:
        raise DegeneratePointError("singular linear system")
    column = DomainMatrix([[to_qq(Fraction(v))] for v in rhs], (len(rhs), 1), QQ)
    solution = matrix.lu_solve(column)
    return [to_fraction(row[0]) for row in solution.to_list()]


def minor(rows: Matrix, i: int, j: int) -> list[list[Entry]]:
    return [
        [e for c, e in enumerate(row) if c != j] for r, row in enumerate(rows) if r != i
    ]


def adjugate(rows: Matrix) -> list[list[Fraction | MultiPoly]]:
    """Transpose of the cofactor matrix, so adj(A)*A = det(A)*I."""
    n = len(rows)
    if n == 1:
        one = rows[0][0] * 0 + 1
        return [[one]]
    cofactors = [
        [(-1) ** (i + j) * determinant(minor(rows, i, j)) for j in range(n)]
        for i in range(n)
    ]
    return [[cofactors[j][i] for j in range(n)] for i in range(n)]


def mat_vec(rows: Matrix, vector: Sequence[Entry]) -> list[Entry]:
    out = []
    for row in rows:
        total = 0
        for a, b in zip(row, vector):
            if a != 0 and b != 0:
                total = a * b + total
        out.append(total)
    return out


def mat_mul(a: Matrix, b: Matrix) -> list[list[Entry]]:
    columns = list(zip(*b))
    product_columns = [mat_vec(a, col) for col in columns]
    return [list(row) for row in zip(*product_columns)]


def inverse(rows: Matrix) -> list[list[Fraction]]:
    det = determinant(rows)
    if det == 0:
        raise DegeneratePointError("matrix is not invertible")
    return [[Fraction(e) / det for e in row] for row in adjugate(rows)]


def identity(size: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
