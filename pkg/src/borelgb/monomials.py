"""Dense-exponent monomials, the grevlex/lex term orders, and exchange moves.

Monomials live in a fixed ambient polynomial ring K[x_1, ..., x_n] and are
stored as dense tuples of nonnegative exponents.  Variables are addressed by
1-based position throughout the API; the textual name of position p is
``x{p - 1 + base}`` where ``base`` (0 or 1) is a display convention only.
"""

from __future__ import annotations

import re


class ParseError(ValueError):
    """Malformed monomial or family text; carries 1-based line/column info."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where += f"line {line}, "
        if column is not None:
            where += f"column {column}, "
        super().__init__(where.rstrip(", ") + ": " + message if where else message)


class AmbientMismatch(ValueError):
    """Operands live in polynomial rings with different numbers of variables."""


_FACTOR_RE = re.compile(r"([A-Za-z]+)(\d+)(?:\^(\d+))?\Z")


class Monomial:
    """An immutable monomial over a fixed number of variables."""

    __slots__ = ("exps", "deg", "_sigma")

    def __init__(self, exps):
        exps = tuple(exps)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        self.exps = exps
        self.deg = sum(exps)
        self._sigma = None

    @classmethod
    def unit(cls, n):
        return cls((0,) * n)

    @classmethod
    def variable(cls, i, n):
        """The monomial x_i (1-based position) in n variables."""
        if not 1 <= i <= n:
            raise ValueError(f"variable position {i} outside 1..{n}")
        return cls(tuple(1 if p == i else 0 for p in range(1, n + 1)))

    @property
    def n(self):
        return len(self.exps)

    @property
    def is_unit(self):
        return self.deg == 0

    def sigma_vector(self):
        """Suffix sums (sigma_1, ..., sigma_n) with sigma_i = e_i + ... + e_n."""
        if self._sigma is None:
            acc = 0
            out = []
            for e in reversed(self.exps):
                acc += e
                out.append(acc)
            self._sigma = tuple(reversed(out))
        return self._sigma

    def sigma(self, i):
        """sigma_i = e_i + e_{i+1} + ... + e_n for a 1-based position i."""
        if not 1 <= i <= self.n:
            raise ValueError(f"position {i} outside 1..{self.n}")
        return self.sigma_vector()[i - 1]

    def support(self):
        """1-based positions of the variables that divide this monomial."""
        return tuple(p for p, e in enumerate(self.exps, start=1) if e)

    def max_var(self):
        """Largest 1-based position dividing the monomial, or 0 for the unit."""
        for p in range(self.n, 0, -1):
            if self.exps[p - 1]:
                return p
        return 0

    def exponent(self, i):
        return self.exps[i - 1]

    def divides(self, other):
        _check_ambient(self, other)
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __mul__(self, other):
        _check_ambient(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exps, other.exps)))

    def __truediv__(self, other):
        """Exact division; raises ValueError when the quotient is not a monomial."""
        _check_ambient(self, other)
        diff = tuple(a - b for a, b in zip(self.exps, other.exps))
        if any(d < 0 for d in diff):
            raise ValueError(f"{other} does not divide {self}")
        return Monomial(diff)

    def pow(self, k):
        if k < 0:
            raise ValueError("negative power")
        return Monomial(tuple(e * k for e in self.exps))

    def grevlex_key(self):
        """Sort key: ascending order under graded reverse lexicographic."""
        return (self.deg, tuple(-e for e in reversed(self.exps)))

    def lex_key(self):
        """Sort key: ascending order under (pure) lexicographic."""
        return self.exps

    def text(self, base=1):
        """Canonical text: '1' or '*'-joined factors in ascending position."""
        if self.deg == 0:
            return "1"
        parts = []
        for p, e in enumerate(self.exps, start=1):
            if e == 1:
                parts.append(f"x{p - 1 + base}")
            elif e >= 2:
                parts.append(f"x{p - 1 + base}^{e}")
        return "*".join(parts)

    def __str__(self):
        return self.text()

    def __repr__(self):
        return f"Monomial({self.exps!r})"

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.exps == other.exps

    def __hash__(self):
        return hash(self.exps)


def _check_ambient(a, b):
    if len(a.exps) != len(b.exps):
        raise AmbientMismatch(f"ambient mismatch: {len(a.exps)} vs {len(b.exps)} variables")


def compare(m1, m2, order="grevlex"):
    """Return -1/0/+1 comparing m1 against m2 under 'grevlex' or 'lex'."""
    _check_ambient(m1, m2)
    if order == "grevlex":
        k1, k2 = m1.grevlex_key(), m2.grevlex_key()
    elif order == "lex":
        k1, k2 = m1.lex_key(), m2.lex_key()
    else:
        raise ValueError(f"unknown order {order!r}")
    return (k1 > k2) - (k1 < k2)


def lcm(m1, m2):
    _check_ambient(m1, m2)
    return Monomial(tuple(max(a, b) for a, b in zip(m1.exps, m2.exps)))


def gcd(m1, m2):
    _check_ambient(m1, m2)
    return Monomial(tuple(min(a, b) for a, b in zip(m1.exps, m2.exps)))


def apply_move(m, i, j):
    """Return (x_i / x_j) * m, the exchange move sending one x_j to x_i.

    Moves with i < j ascend in the Borel order; i > j gives the reverse move.
    Requires x_j | m and i != j.
    """
    n = m.n
    if not (1 <= i <= n and 1 <= j <= n):
        raise ValueError(f"move positions ({i}, {j}) outside 1..{n}")
    if i == j:
        raise ValueError("move requires two distinct positions")
    if m.exps[j - 1] == 0:
        raise ValueError(f"x{j} does not divide {m}: cannot move it")
    exps = list(m.exps)
    exps[j - 1] -= 1
    exps[i - 1] += 1
    return Monomial(exps)


def restrict(m, positions):
    """Compress m to the given 1-based positions, as a monomial in len(positions) variables.

    Exponents off the listed positions are discarded; callers use this to work
    inside the subring on a support set, then map back with `expand`.
    """
    positions = sorted(positions)
    return Monomial(tuple(m.exps[p - 1] for p in positions))


def expand(m, positions, n):
    """Inverse of `restrict`: place compressed exponents back at `positions` in n variables."""
    positions = sorted(positions)
    if len(positions) != m.n:
        raise ValueError("position list does not match compressed monomial")
    exps = [0] * n
    for p, e in zip(positions, m.exps):
        exps[p - 1] = e
    return Monomial(exps)


def parse_power_product(text, letter, n, base=1, line=None, column_offset=0):
    """Parse '1' or 'x3*x4^2'-style text into an exponent tuple of length n.

    `letter` selects the variable family ('x' or 't'); names run from base to
    base + n - 1.  Repeated factors accumulate.  Reports 1-based columns.
    """
    stripped = text.strip()
    col0 = column_offset + len(text) - len(text.lstrip()) + 1
    if not stripped:
        raise ParseError("empty monomial", line, col0)
    if stripped == "1":
        return (0,) * n
    exps = [0] * n
    col = col0
    for piece in stripped.split("*"):
        m = _FACTOR_RE.match(piece.strip())
        pcol = col + len(piece) - len(piece.lstrip())
        if m is None:
            raise ParseError(f"malformed factor {piece.strip()!r}", line, pcol)
        name, idx, exp = m.group(1), int(m.group(2)), m.group(3)
        if name != letter:
            raise ParseError(f"expected {letter!r} variables, got {piece.strip()!r}", line, pcol)
        pos = idx - base + 1
        if not 1 <= pos <= n:
            raise ParseError(
                f"{letter}{idx} outside the declared range {letter}{base}..{letter}{base + n - 1}",
                line, pcol)
        e = 1 if exp is None else int(exp)
        if e < 1:
            raise ParseError(f"exponent must be >= 1 in {piece.strip()!r}", line, pcol)
        exps[pos - 1] += e
        col += len(piece) + 1
    return tuple(exps)


def parse_monomial(text, n, base=1, line=None, column_offset=0):
    """Parse monomial text over x-variables into a Monomial of n variables."""
    return Monomial(parse_power_product(text, "x", n, base, line, column_offset))
