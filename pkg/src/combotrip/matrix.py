"""Small exact 3x3 integer matrices."""


class MatrixZ:
    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise ValueError("MatrixZ is 3x3")
        self.rows = rows

    @classmethod
    def identity(cls):
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __matmul__(self, other):
        a, b = self.rows, other.rows
        return MatrixZ(
            [[a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j] for j in range(3)] for i in range(3)]
        )

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result, base = MatrixZ.identity(), self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    @property
    def T(self):
        return MatrixZ(zip(*self.rows))

    def det(self):
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def adjugate(self):
        m = self.rows
        # cyclic index form of the cofactors carries the sign on its own
        cof = [
            [
                m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
                for j in range(3)
            ]
            for i in range(3)
        ]
        return MatrixZ(cof).T

    def inverse(self):
        d = self.det()
        if d not in (1, -1):
            raise ValueError(f"matrix is not unimodular (det {d})")
        adj = self.adjugate()
        return MatrixZ([[v * d for v in r] for r in adj.rows])

    def row_apply(self, v):
        """Row vector v (length 3, any ring) times this matrix."""
        m = self.rows
        return tuple(v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j] for j in range(3))

    def __eq__(self, other):
        if isinstance(other, MatrixZ):
            return self.rows == other.rows
        try:
            return self.rows == MatrixZ(other).rows
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(self.rows)

    def tolist(self):
        return [list(r) for r in self.rows]

    def __repr__(self):
        return f"MatrixZ({self.tolist()})"
