"""The generalized Ramanujan polynomial families and their symbolic identities.

Families, all with exact integer coefficients:

* ``q_n(n)``: the four-variable sequence defined by Q_1 = 1 and
  Q_{n+1} = [x + n z + (y + t)(n + y d/dy)] Q_n.
* ``q_nk(n, k)``: the coefficient triangle of Q_n(x, y, 1, t) in powers of y,
  computed by its own two-term recurrence (memoized in a :class:`QTable`);
  ``shifted=True`` gives Q_{n,k}(x - t - 1, t).
* ``p_n(n)``: the classical two-variable specialization (z=1, t=0 recurrence).
* ``r_n(n)``: the one-variable sequence with R_{n+1} = [n(1+y) + y^2 d/dy] R_n.

``closed_form`` builds the product formulas these families collapse to at
special values, and ``verify_identity`` checks every purely symbolic identity
exactly (recurrences, the duality substitution, the cleared 1/t reformulation,
the operator identities, and the Chu-Vandermonde variant).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from pathlib import Path
from typing import Iterator

from .polyring import Poly, poly_prod

Q_VARS = ("x", "y", "z", "t")
QK_VARS = ("x", "t")
P_VARS = ("x", "y")
R_VARS = ("y",)

IDENTITY_NAMES = frozenset({
    "duality", "expansion", "special2", "factor", "qnxt",
    "rec2", "rec3", "diff", "mainconj", "operator-remark",
    "chu", "gessel-seo", "eq-equiv",
})

MAX_SYMBOLIC_N = 64


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def narayana(n: int, k: int) -> int:
    if not 1 <= k <= n:
        return 0
    return comb(n, k) * comb(n, k - 1) // n


def odd_double_factorial(m: int) -> int:
    """m!! for odd m >= -1; (-1)!! = 1 by convention."""
    result = 1
    while m > 1:
        result *= m
        m -= 2
    return result


# -- the polynomial families -------------------------------------------------

_q_seq: list[Poly] = []
_p_seq: list[Poly] = []
_r_seq: list[Poly] = []


def q_n(n: int) -> Poly:
    """Q_n in the four variables x, y, z, t."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not _q_seq:
        _q_seq.append(Poly.const(Q_VARS, 1))
    x = Poly.var(Q_VARS, "x")
    z = Poly.var(Q_VARS, "z")
    y = Poly.var(Q_VARS, "y")
    t = Poly.var(Q_VARS, "t")
    while len(_q_seq) < n:
        m = len(_q_seq)          # _q_seq[m-1] = Q_m; build Q_{m+1}
        prev = _q_seq[m - 1]
        _q_seq.append((x + z * m) * prev + (y + t) * prev.shifted_derivative("y", m))
    return _q_seq[n - 1]


def p_n(n: int) -> Poly:
    """The two-variable specialization: P_{n+1} = [x + n + y(n + y d/dy)] P_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not _p_seq:
        _p_seq.append(Poly.const(P_VARS, 1))
    x = Poly.var(P_VARS, "x")
    y = Poly.var(P_VARS, "y")
    while len(_p_seq) < n:
        m = len(_p_seq)
        prev = _p_seq[m - 1]
        _p_seq.append((x + m) * prev + y * prev.shifted_derivative("y", m))
    return _p_seq[n - 1]


def r_n(n: int) -> Poly:
    """The one-variable sequence: R_{n+1} = [n(1 + y) + y^2 d/dy] R_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not _r_seq:
        _r_seq.append(Poly.const(R_VARS, 1))
    y = Poly.var(R_VARS, "y")
    while len(_r_seq) < n:
        m = len(_r_seq)
        prev = _r_seq[m - 1]
        _r_seq.append(prev * m + y * prev * m + y * y * prev.derivative("y"))
    return _r_seq[n - 1]


class QTable:
    """Memoized triangle of the coefficient polynomials in {x, t}.

    Entry (1, 0) is 1; entries with k >= n or k < 0 are zero by definition.
    """

    def __init__(self):
        self._plain: dict[tuple[int, int], Poly] = {(1, 0): Poly.const(QK_VARS, 1)}
        self._shifted: dict[tuple[int, int], Poly] = {}

    def get(self, n: int, k: int) -> Poly:
        if n < 1:
            raise ValueError("n must be >= 1")
        if k < 0 or k >= n:
            return Poly.zero(QK_VARS)
        key = (n, k)
        if key not in self._plain:
            x = Poly.var(QK_VARS, "x")
            t = Poly.var(QK_VARS, "t")
            head = (x + (n - 1) + t * (n + k - 1)) * self.get(n - 1, k)
            tail = self.get(n - 1, k - 1) * (n + k - 2)
            self._plain[key] = head + tail
        return self._plain[key]

    def get_shifted(self, n: int, k: int) -> Poly:
        if k < 0 or k >= n:
            return Poly.zero(QK_VARS)
        key = (n, k)
        if key not in self._shifted:
            x = Poly.var(QK_VARS, "x")
            t = Poly.var(QK_VARS, "t")
            self._shifted[key] = self.get(n, k).substitute({"x": x - t - 1})
        return self._shifted[key]

    def row(self, n: int) -> list[Poly]:
        return [self.get(n, k) for k in range(n)]

    def save(self, path: str | Path) -> None:
        data = {f"{n},{k}": poly.render() for (n, k), poly in sorted(self._plain.items())}
        Path(path).write_text(json.dumps(data, sort_keys=True, indent=1))

    @classmethod
    def load(cls, path: str | Path) -> "QTable":
        from .polyring import parse
        table = cls()
        data = json.loads(Path(path).read_text())
        for key, text in data.items():
            n_str, k_str = key.split(",")
            table._plain[(int(n_str), int(k_str))] = parse(text, QK_VARS)
        return table


_default_table = QTable()


def q_nk(n: int, k: int, shifted: bool = False) -> Poly:
    """Q_{n,k}(x, t), or Q_{n,k}(x - t - 1, t) when shifted."""
    return _default_table.get_shifted(n, k) if shifted else _default_table.get(n, k)


def load_default_cache(path: str | Path) -> None:
    """Prewarm the module table from a saved JSON cache."""
    loaded = QTable.load(path)
    _default_table._plain.update(loaded._plain)


def save_default_cache(path: str | Path) -> None:
    _default_table.save(path)


# -- closed-form products ----------------------------------------------------

CLOSED_FORMS = ("special2", "factor", "qnxt", "gessel-seo")


def closed_form(name: str, n: int) -> Poly:
    """Expanded product formulas, all in the four-variable universe."""
    if n < 1:
        raise ValueError("n must be >= 1")
    x = Poly.var(Q_VARS, "x")
    z = Poly.var(Q_VARS, "z")
    t = Poly.var(Q_VARS, "t")
    if name == "special2":
        return poly_prod((x + z * k for k in range(1, n)), Q_VARS)
    if name == "factor":
        return poly_prod((x + z * k + t * k for k in range(1, n)), Q_VARS)
    if name == "qnxt":
        return poly_prod((x + z * n + t * k for k in range(1, n)), Q_VARS)
    if name == "gessel-seo":
        return x * poly_prod((x + z * (n - k) + t * k for k in range(1, n)), Q_VARS)
    raise ValueError(f"unknown closed form {name!r}")


# -- identity verification ---------------------------------------------------

@dataclass
class QIdentityResult:
    name: str
    n: int
    k: int | None
    status: str                      # "pass" | "fail" | "bound-exceeded"
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def _result(name, n, k, lhs: Poly, rhs: Poly) -> QIdentityResult:
    if lhs == rhs:
        return QIdentityResult(name, n, k, "pass")
    return QIdentityResult(name, n, k, "fail",
                           {"lhs": lhs.render(), "rhs": rhs.render()})


def _first_failure(name, n, results: Iterator[QIdentityResult]) -> QIdentityResult:
    for res in results:
        if not res.ok:
            return res
    return QIdentityResult(name, n, None, "pass")


def _duality(n: int) -> QIdentityResult:
    q = q_n(n)
    x = Poly.var(Q_VARS, "x")
    z = Poly.var(Q_VARS, "z")
    t = Poly.var(Q_VARS, "t")
    rhs = q.substitute({"x": x + z * n + t * n, "z": -t, "t": -z})
    return _result("duality", n, None, q, rhs)


def _expansion(n: int) -> QIdentityResult:
    lhs = q_n(n).substitute({"z": 1})
    y = Poly.var(Q_VARS, "y")
    rhs = Poly.zero(Q_VARS)
    for k in range(n):
        rhs = rhs + q_nk(n, k).extend(Q_VARS) * y ** k
    return _result("expansion", n, None, lhs, rhs)


def _specialization(name: str, n: int) -> QIdentityResult:
    subs = {"special2": {"t": -Poly.var(Q_VARS, "y")},
            "factor": {"y": 0},
            "qnxt": {"y": Poly.var(Q_VARS, "z")}}[name]
    return _result(name, n, None, q_n(n).substitute(subs), closed_form(name, n))


def _gessel_seo(n: int) -> QIdentityResult:
    z = Poly.var(Q_VARS, "z")
    t = Poly.var(Q_VARS, "t")
    lhs = Poly.var(Q_VARS, "x") * q_n(n).substitute({"y": z, "t": t - z})
    return _result("gessel-seo", n, None, lhs, closed_form("gessel-seo", n))


def _rec2(n: int, k: int) -> QIdentityResult:
    x = Poly.var(QK_VARS, "x")
    t = Poly.var(QK_VARS, "t")
    shift = {"x": x + t + 1}
    rhs = (x - k + t + 1) * q_nk(n - 1, k).substitute(shift) \
        + q_nk(n - 1, k - 1).substitute(shift) * (n + k - 2)
    return _result("rec2", n, k, q_nk(n, k), rhs)


def _rec3(n: int, k: int) -> QIdentityResult:
    x = Poly.var(QK_VARS, "x")
    rhs = (x - k) * q_nk(n - 1, k) + q_nk(n - 1, k - 1) * (n + k - 2)
    return _result("rec3", n, k, q_nk(n, k, shifted=True), rhs)


def _diff(n: int, k: int) -> QIdentityResult:
    t = Poly.var(QK_VARS, "t")
    lhs = q_nk(n, k) - q_nk(n, k, shifted=True)
    rhs = (t + 1) * q_nk(n - 1, k) * (n + k - 1)
    return _result("diff", n, k, lhs, rhs)


def _mainconj(n: int, k: int) -> QIdentityResult:
    # Q_{n,k}(-(x+n+nt)/t, 1/t) * (-t)^(n-k-1) with the powers of t cleared
    # monomial by monomial; polynomial because deg Q_{n,k} <= n-k-1.
    p = q_nk(n, k)
    d = n - k - 1
    x = Poly.var(QK_VARS, "x")
    t = Poly.var(QK_VARS, "t")
    base = x + n + t * n
    rhs = Poly.zero(QK_VARS)
    for (a, b), coeff in p.terms.items():
        residue = d - a - b
        if residue < 0:
            return QIdentityResult("mainconj", n, k, "fail",
                                   {"reason": f"monomial x^{a}*t^{b} exceeds degree {d}"})
        sign = -1 if (a + d) % 2 else 1
        rhs = rhs + base ** a * t ** residue * (sign * coeff)
    return _result("mainconj", n, k, p, rhs)


def _operator_remark(n: int) -> QIdentityResult:
    x = Poly.var(Q_VARS, "x")
    z = Poly.var(Q_VARS, "z")
    y = Poly.var(Q_VARS, "y")
    t = Poly.var(Q_VARS, "t")
    f_n = q_n(n)
    f_next = q_n(n + 1)
    shifted = f_next.substitute({"x": x - z - t})
    # F_{n+1}(x - z - t) == [x + nz + (y - z)(n + y d/dy)] F_n
    rhs1 = (x + z * n) * f_n + (y - z) * f_n.shifted_derivative("y", n)
    res = _result("operator-remark", n, None, shifted, rhs1)
    if not res.ok:
        return res
    # F_{n+1}(x) - F_{n+1}(x - z - t) == (z + t)(n + y d/dy) F_n
    rhs2 = (z + t) * f_n.shifted_derivative("y", n)
    res = _result("operator-remark", n, None, f_next - shifted, rhs2)
    if not res.ok:
        return res
    if n >= 2:
        # (y+t)(n + y d/dy)(n-1 + y d/dy) == (n-1 + y d/dy)[(y+t)(n + y d/dy) - y]
        # applied to F_{n-1}, the instance the inductive argument uses.
        f_prev = q_n(n - 1)
        lhs = (y + t) * f_prev.shifted_derivative("y", n - 1).shifted_derivative("y", n)
        inner = (y + t) * f_prev.shifted_derivative("y", n) - y * f_prev
        res = _result("operator-remark", n, None, lhs, inner.shifted_derivative("y", n - 1))
    return res


def _chu(n: int) -> QIdentityResult:
    uni = ("x", "y", "t")
    x = Poly.var(uni, "x")
    y = Poly.var(uni, "y")
    t = Poly.var(uni, "t")
    lhs = Poly.zero(uni)
    for k in range(n + 1):
        head = poly_prod((x + t * i for i in range(k + 1)), uni)
        tail = poly_prod((y + t * j for j in range(n - k)), uni)
        lhs = lhs + head * tail * comb(n, k)
    rhs = x * poly_prod((x + y + t * k for k in range(1, n + 1)), uni)
    return _result("chu", n, None, lhs, rhs)


def _eq_equiv(n: int, k: int | None) -> QIdentityResult:
    from . import treecore
    x = Poly.var(QK_VARS, "x")
    t = Poly.var(QK_VARS, "t")
    enum = treecore.TreeEnumerator()
    left = treecore.weight_census(range(1, n + 2), root=1, enumerator=enum)
    right = treecore.weight_census(range(1, n + 1), enumerator=enum)
    ks = range(n) if k is None else [k]
    for kk in ks:
        lhs = treecore.census_poly(left.get(kk, {}), mode="o")
        rhs = treecore.census_poly(right.get(kk, {}), mode="p").substitute({"x": x + t + 1})
        if lhs != rhs:
            return QIdentityResult("eq-equiv", n, kk, "fail",
                                   {"lhs": lhs.render(), "rhs": rhs.render()})
    return QIdentityResult("eq-equiv", n, k, "pass")


def verify_identity(name: str, n: int, k: int | None = None) -> QIdentityResult:
    """Check one named identity exactly at the given n (and k, where relevant)."""
    if name not in IDENTITY_NAMES:
        raise ValueError(f"unknown identity {name!r}; known: {sorted(IDENTITY_NAMES)}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_SYMBOLIC_N:
        return QIdentityResult(name, n, k, "bound-exceeded",
                               {"reason": f"n > {MAX_SYMBOLIC_N}"})
    if name == "duality":
        return _duality(n)
    if name == "expansion":
        return _expansion(n)
    if name in ("special2", "factor", "qnxt"):
        return _specialization(name, n)
    if name == "gessel-seo":
        return _gessel_seo(n)
    if name == "chu":
        return _chu(n)
    if name == "operator-remark":
        return _operator_remark(n)
    if name == "eq-equiv":
        from .treecore import BoundExceeded
        try:
            return _eq_equiv(n, k)
        except BoundExceeded as exc:
            return QIdentityResult(name, n, k, "bound-exceeded", {"reason": str(exc)})
    if n < 2:
        return QIdentityResult(name, n, k, "pass")   # rec2/rec3/diff start at n=2
    per_k = {"rec2": _rec2, "rec3": _rec3, "diff": _diff, "mainconj": _mainconj}[name]
    if k is not None:
        return per_k(n, k)
    return _first_failure(name, n, (per_k(n, kk) for kk in range(n)))
