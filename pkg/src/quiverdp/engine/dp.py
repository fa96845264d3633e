"""The determinant/pfaffian mixture DP and its partial linearization

For matrices X of shape (t+2r)×(t+2s), Y of size t+2r and Z of size t+2s::

    DP_{r,s}(X,Y,Z) = Σ sgn(στ) ∏_{k≤t} x_{σ(k),τ(k)} ∏_{j≤r} y_{σ(t+j),σ(t+r+j)}
                                 ∏_{k≤s} z_{τ(t+k),τ(t+s+k)}

summed over one (σ, τ) per coset of {(ν1×ν2×ν2, ν1×ν3×ν3)}. The linearized form
takes a matrix per position (X_{Γ|k|}, Y_{Δ|j|}, Z_{Λ|k|}) and the Young subgroups of
Γ, Δ, Λ. Both are integral sums, so no division happens in any characteristic.

Entries may be field scalars or SparsePolynomials. Evaluation backtracks τ first and σ
second, skipping structurally zero entries.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Callable, Sequence

from quiverdp.algebra.combinatorics import (
    Distribution,
    Multipartition,
    Permutation,
    dp_coset_reps,
    parity_sign,
)
from quiverdp.algebra.linalg import determinant as numeric_determinant
from quiverdp.algebra.linalg import matmul, transpose
from quiverdp.algebra.polynomial import PolynomialAccumulator, SparsePolynomial
from quiverdp.algebra.scalars import QQ, ScalarField
from quiverdp.core.errors import CapExceededError, QuiverDPError
from quiverdp.core.logging import get_logger
from quiverdp.core.report import CheckReport

log = get_logger("dp")

DEFAULT_CAP = 10

MatrixLike = Sequence[Sequence]


def _is_zero(x) -> bool:
    return x.is_zero() if isinstance(x, SparsePolynomial) else x == 0


def _single_block(n: int) -> Distribution:
    return Distribution(blocks=(tuple(range(1, n + 1)),) if n else (), ground=n)


def coset_count(t: int, r: int, s: int, gamma: Distribution, delta: Distribution, lam: Distribution) -> int:
    """(t+2r)!(t+2s)! / (|S_Γ||S_Δ||S_Λ|)"""
    return (
        factorial(t + 2 * r)
        * factorial(t + 2 * s)
        // (gamma.young_order() * delta.young_order() * lam.young_order())
    )


def check_cap(t: int, r: int, s: int, cap: int, bound: int | None = None) -> None:
    if t + 2 * r > cap or t + 2 * s > cap:
        if bound is None:
            bound = factorial(t + 2 * r) * factorial(t + 2 * s)
        raise CapExceededError(
            f"DP of shape t={t}, r={r}, s={s} exceeds the size cap", bound=bound, cap=cap
        )


def _check_shape(m: MatrixLike, rows: int, cols: int, name: str) -> None:
    if len(m) != rows or any(len(row) != cols for row in m):
        got = f"{len(m)}x{len(m[0]) if m else 0}"
        raise ValueError(f"{name} must be {rows}x{cols}, got {got}")


# ============================================================================
# Coset-sum kernel
# ============================================================================


def _coset_sum(
    x_at: Callable[[int], MatrixLike],
    y_at: Callable[[int], MatrixLike],
    z_at: Callable[[int], MatrixLike],
    t: int,
    r: int,
    s: int,
    gamma: Distribution,
    delta: Distribution,
    lam: Distribution,
    field: ScalarField,
    prune: bool = True,
) -> SparsePolynomial:
    """Σ sgn(στ)·term over the canonical representatives; 1 when t=r=s=0"""
    if t == r == s == 0:
        return SparsePolynomial.constant(field, 1)
    if not prune:
        return _unpruned_sum(x_at, y_at, z_at, t, r, s, gamma, delta, lam, field)

    n_rows, n_cols = t + 2 * r, t + 2 * s
    xs = [x_at(k) for k in range(1, t + 1)]
    ys = [y_at(j) for j in range(1, r + 1)]
    zs = [z_at(k) for k in range(1, s + 1)]

    # chain predecessor of every position: τ on Γ and t+Λ, σ on t+Δ
    tau_prev = [0] * (n_cols + 1)
    for block in gamma.blocks:
        for a, b in zip(block, block[1:]):
            tau_prev[b] = a
    for block in lam.blocks:
        for a, b in zip(block, block[1:]):
            tau_prev[t + b] = t + a
    sigma_prev = [0] * (n_rows + 1)
    for block in delta.blocks:
        for a, b in zip(block, block[1:]):
            sigma_prev[t + b] = t + a

    col_support = [
        [c for c in range(n_cols) if any(not _is_zero(x[row][c]) for row in range(n_rows))]
        for x in xs
    ]

    tau = [0] * (n_cols + 1)
    sigma = [0] * (n_rows + 1)
    used_c = [False] * n_cols
    used_r = [False] * n_rows

    symbolic = _any_symbolic(xs) or _any_symbolic(ys) or _any_symbolic(zs)
    acc = PolynomialAccumulator(field)
    numeric_total = [0]

    def emit(value) -> None:
        sign = parity_sign(sigma[1:]) * parity_sign(tau[1:])
        if symbolic:
            if isinstance(value, SparsePolynomial):
                acc.add(value, sign)
            else:
                acc.add_term((), sign * value)
        else:
            numeric_total[0] += sign * value

    def mul(a, b):
        if isinstance(a, SparsePolynomial) or isinstance(b, SparsePolynomial):
            if not isinstance(a, SparsePolynomial):
                a, b = b, a
            return a * b
        return a * b

    # σ phase: X rows, then Y pairs
    def sigma_x(k: int, value) -> None:
        if k > t:
            sigma_y(1, value)
            return
        x = xs[k - 1]
        col = tau[k] - 1
        for row in range(n_rows):
            if used_r[row]:
                continue
            e = x[row][col]
            if _is_zero(e):
                continue
            used_r[row] = True
            sigma[k] = row + 1
            sigma_x(k + 1, mul(value, e))
            used_r[row] = False
        sigma[k] = 0

    def sigma_y(j: int, value) -> None:
        if j > r:
            emit(value)
            return
        y = ys[j - 1]
        p, q = t + j, t + r + j
        lo = sigma[sigma_prev[p]] if sigma_prev[p] else 0
        for a in range(lo, n_rows):
            if used_r[a]:
                continue
            used_r[a] = True
            sigma[p] = a + 1
            for b in range(n_rows):
                if used_r[b]:
                    continue
                e = y[a][b]
                if _is_zero(e):
                    continue
                used_r[b] = True
                sigma[q] = b + 1
                sigma_y(j + 1, mul(value, e))
                used_r[b] = False
            used_r[a] = False
        sigma[p] = sigma[q] = 0

    # τ phase: X columns, then Z pairs
    def tau_x(k: int, value) -> None:
        if k > t:
            tau_z(1, value)
            return
        lo = tau[tau_prev[k]] if tau_prev[k] else 0
        for c in col_support[k - 1]:
            if c < lo or used_c[c]:
                continue
            used_c[c] = True
            tau[k] = c + 1
            tau_x(k + 1, value)
            used_c[c] = False
        tau[k] = 0

    def tau_z(k: int, value) -> None:
        if k > s:
            sigma_x(1, value)
            return
        z = zs[k - 1]
        p, q = t + k, t + s + k
        lo = tau[tau_prev[p]] if tau_prev[p] else 0
        for a in range(lo, n_cols):
            if used_c[a]:
                continue
            used_c[a] = True
            tau[p] = a + 1
            for b in range(n_cols):
                if used_c[b]:
                    continue
                e = z[a][b]
                if _is_zero(e):
                    continue
                used_c[b] = True
                tau[q] = b + 1
                tau_z(k + 1, mul(value, e))
                used_c[b] = False
            used_c[a] = False
        tau[p] = tau[q] = 0

    tau_x(1, 1)
    if symbolic:
        return acc.result()
    return SparsePolynomial.constant(field, field.normalize(numeric_total[0]))


def _any_symbolic(matrices: Sequence[MatrixLike]) -> bool:
    return any(isinstance(e, SparsePolynomial) for m in matrices for row in m for e in row)


def _term(xs, ys, zs, t, r, s, sigma, tau):
    value = 1
    for k in range(1, t + 1):
        value = _times(value, xs[k - 1][sigma(k) - 1][tau(k) - 1])
    for j in range(1, r + 1):
        value = _times(value, ys[j - 1][sigma(t + j) - 1][sigma(t + r + j) - 1])
    for k in range(1, s + 1):
        value = _times(value, zs[k - 1][tau(t + k) - 1][tau(t + s + k) - 1])
    return value


def _times(a, b):
    if isinstance(b, SparsePolynomial) and not isinstance(a, SparsePolynomial):
        return b * a
    return a * b


def _unpruned_sum(x_at, y_at, z_at, t, r, s, gamma, delta, lam, field) -> SparsePolynomial:
    xs = [x_at(k) for k in range(1, t + 1)]
    ys = [y_at(j) for j in range(1, r + 1)]
    zs = [z_at(k) for k in range(1, s + 1)]
    acc = PolynomialAccumulator(field)
    for sigma, tau in dp_coset_reps(t, r, s, gamma, delta, lam):
        value = _term(xs, ys, zs, t, r, s, sigma, tau)
        sign = sigma.sign() * tau.sign()
        if isinstance(value, SparsePolynomial):
            acc.add(value, sign)
        else:
            acc.add_term((), sign * value)
    return acc.result()


# ============================================================================
# Public evaluators
# ============================================================================


def dp_eval(
    X: MatrixLike,
    Y: MatrixLike,
    Z: MatrixLike,
    t: int,
    r: int,
    s: int,
    field: ScalarField = QQ,
    cap: int = DEFAULT_CAP,
    prune: bool = True,
) -> SparsePolynomial:
    """DP_{r,s}(X, Y, Z); zero when t = r = s = 0"""
    if min(t, r, s) < 0:
        raise ValueError(f"Negative shape t={t}, r={r}, s={s}")
    _check_shape(X, t + 2 * r, t + 2 * s, "X")
    _check_shape(Y, t + 2 * r, t + 2 * r, "Y")
    _check_shape(Z, t + 2 * s, t + 2 * s, "Z")
    if t == r == s == 0:
        return SparsePolynomial.zero(field)
    check_cap(t, r, s, cap)
    return _coset_sum(
        lambda k: X, lambda j: Y, lambda k: Z, t, r, s,
        _single_block(t), _single_block(r), _single_block(s), field, prune,
    )


def dp_multilinear(
    xs: Sequence[MatrixLike],
    ys: Sequence[MatrixLike],
    zs: Sequence[MatrixLike],
    gamma: Multipartition,
    delta: Multipartition,
    lam: Multipartition,
    field: ScalarField = QQ,
    cap: int = DEFAULT_CAP,
    prune: bool = True,
) -> SparsePolynomial:
    """DP_{γ,δ,λ}: one matrix per part of γ, δ, λ (flattened part order); 0 when all are empty"""
    for name, mats, mp in (("X", xs, gamma), ("Y", ys, delta), ("Z", zs, lam)):
        if len(mats) != len(mp.flat):
            raise ValueError(f"{len(mats)} {name}-matrices for {len(mp.flat)} parts")
    t, r, s = sum(gamma.flat), sum(delta.flat), sum(lam.flat)
    for i, x in enumerate(xs, start=1):
        _check_shape(x, t + 2 * r, t + 2 * s, f"X{i}")
    for i, y in enumerate(ys, start=1):
        _check_shape(y, t + 2 * r, t + 2 * r, f"Y{i}")
    for i, z in enumerate(zs, start=1):
        _check_shape(z, t + 2 * s, t + 2 * s, f"Z{i}")
    if t == r == s == 0:
        return SparsePolynomial.zero(field)
    G, D, L = gamma.distribution(), delta.distribution(), lam.distribution()
    check_cap(t, r, s, cap, coset_count(t, r, s, G, D, L))
    return _coset_sum(
        lambda k: xs[G.block_of(k) - 1],
        lambda j: ys[D.block_of(j) - 1],
        lambda k: zs[L.block_of(k) - 1],
        t, r, s, G, D, L, field, prune,
    )


def dp_full_sum(
    xs: Sequence[MatrixLike],
    ys: Sequence[MatrixLike],
    zs: Sequence[MatrixLike],
    gamma: Multipartition,
    delta: Multipartition,
    lam: Multipartition,
) -> SparsePolynomial:
    """(1/|S_Γ||S_Δ||S_Λ|) Σ over all of S_{t+2r}×S_{t+2s}, over the rationals"""
    t, r, s = sum(gamma.flat), sum(delta.flat), sum(lam.flat)
    G, D, L = gamma.distribution(), delta.distribution(), lam.distribution()
    xs_at = [xs[G.block_of(k) - 1] for k in range(1, t + 1)]
    ys_at = [ys[D.block_of(j) - 1] for j in range(1, r + 1)]
    zs_at = [zs[L.block_of(k) - 1] for k in range(1, s + 1)]
    acc = PolynomialAccumulator(QQ)
    all_sigma = [Permutation(p) for p in permutations(range(1, t + 2 * r + 1))]
    all_tau = [Permutation(p) for p in permutations(range(1, t + 2 * s + 1))]
    for sigma in all_sigma:
        for tau in all_tau:
            value = _term(xs_at, ys_at, zs_at, t, r, s, sigma, tau)
            sign = sigma.sign() * tau.sign()
            if isinstance(value, SparsePolynomial):
                acc.add(value, sign)
            else:
                acc.add_term((), sign * value)
    order = G.young_order() * D.young_order() * L.young_order()
    return acc.result().scale(Fraction(1, order))


def single(n: int) -> Multipartition:
    """The one-part multipartition (n), or the empty one for n = 0"""
    return Multipartition(((n,),) if n else ((),))


def determinant(X: MatrixLike, field: ScalarField = QQ, cap: int = DEFAULT_CAP) -> SparsePolynomial:
    """det X as the coset sum over S_t×S_t / diag(S_t)"""
    t = len(X)
    _check_shape(X, t, t, "X")
    check_cap(t, 0, 0, cap)
    return _coset_sum(
        lambda k: X, None, None, t, 0, 0,
        _single_block(t), _single_block(0), _single_block(0), field,
    )


def generalized_pfaffian(Y: MatrixLike, field: ScalarField = QQ, cap: int = DEFAULT_CAP) -> SparsePolynomial:
    """P(Y) = Σ_{σ ∈ S_2r / diag(S_r×S_r)} sgn σ ∏ y_{σ(k),σ(k+r)}; P = 1 for r = 0"""
    n = len(Y)
    if n % 2:
        raise ValueError(f"Generalized pfaffian needs even size, got {n}")
    _check_shape(Y, n, n, "Y")
    r = n // 2
    check_cap(0, r, 0, cap)
    return _coset_sum(
        None, lambda j: Y, None, 0, r, 0,
        _single_block(0), _single_block(r), _single_block(0), field,
    )


def _skew_check(C: MatrixLike) -> None:
    n = len(C)
    _check_shape(C, n, n, "C")
    for i in range(n):
        for j in range(i, n):
            total = C[i][j] + C[j][i]
            if not _is_zero(total) or (i == j and not _is_zero(C[i][i])):
                raise ValueError(f"Matrix is not skew-symmetric at ({i + 1},{j + 1})")


def classical_pfaffian(C: MatrixLike, field: ScalarField = QQ):
    """Pfaffian of a skew-symmetric matrix by expansion along the first row"""
    n = len(C)
    if n % 2:
        raise ValueError(f"Pfaffian needs even size, got {n}")
    _skew_check(C)

    def pf(idx: tuple[int, ...]):
        if not idx:
            return 1
        first, rest = idx[0], idx[1:]
        total = 0
        for pos, j in enumerate(rest):
            e = C[first][j]
            if _is_zero(e):
                continue
            sub = pf(rest[:pos] + rest[pos + 1 :])
            term = _times(sub, e) if pos % 2 == 0 else -_times(sub, e)
            total = term + total if isinstance(term, SparsePolynomial) else total + term
        return total

    result = pf(tuple(range(n)))
    if isinstance(result, SparsePolynomial):
        return result.reduce_mod(field)
    return field.normalize(result)


def pfaffian_sum(C: MatrixLike, field: ScalarField = QQ):
    """Σ over σ with σ(2k−1) < σ(2k) of sgn σ ∏ c_{σ(2k−1),σ(2k)}  (= r!·pf C)"""
    n = len(C)
    if n % 2:
        raise ValueError(f"Pfaffian needs even size, got {n}")
    _skew_check(C)
    total = 0
    for images in permutations(range(n)):
        if any(images[2 * k] > images[2 * k + 1] for k in range(n // 2)):
            continue
        value = 1
        for k in range(n // 2):
            value = _times(value, C[images[2 * k]][images[2 * k + 1]])
        term = value if parity_sign(images) > 0 else -value
        total = term + total if isinstance(term, SparsePolynomial) else total + term
    if isinstance(total, SparsePolynomial):
        return total.reduce_mod(field)
    return field.normalize(total)


# ============================================================================
# Property suite
# ============================================================================


def _random_matrix(rows: int, cols: int, rng: random.Random, field: ScalarField) -> list[list]:
    return [[field.coerce(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]


def _random_invertible(n: int, rng: random.Random, field: ScalarField) -> list[list]:
    for _ in range(100):
        g = _random_matrix(n, n, rng, field)
        if numeric_determinant(g, field) != 0:
            return g
    raise QuiverDPError(f"No invertible {n}x{n} sample found")


def dp_property_suite(
    t: int,
    r: int,
    s: int,
    trials: int = 10,
    seed: int = 0,
    field: ScalarField = QQ,
    cap: int = DEFAULT_CAP,
) -> CheckReport:
    """Transpose symmetry, transpose signs and the det(g)/det(h) equivariance of DP"""
    report = CheckReport(title=f"DP identities t={t} r={r} s={s} over {field}")
    if t == r == s == 0:
        report.add("shape", True, "t=r=s=0 excluded: DP is defined as 0 there")
        return report
    check_cap(t, r, s, cap)
    rng = random.Random(seed)
    R, S = t + 2 * r, t + 2 * s
    failures = {"transpose": 0, "y-sign": 0, "z-sign": 0, "left-g": 0, "right-h": 0}
    examples: dict[str, str] = {}

    def fail(name: str, detail: str) -> None:
        failures[name] += 1
        examples.setdefault(name, detail)

    for trial in range(trials):
        X = _random_matrix(R, S, rng, field)
        Y = _random_matrix(R, R, rng, field)
        Z = _random_matrix(S, S, rng, field)
        base = dp_eval(X, Y, Z, t, r, s, field, cap)
        ctx = f"trial {trial}: X={X} Y={Y} Z={Z}"

        if dp_eval(transpose(X, S), Z, Y, t, s, r, field, cap) != base:
            fail("transpose", ctx)
        if dp_eval(X, transpose(Y), Z, t, r, s, field, cap) != base * ((-1) ** r):
            fail("y-sign", ctx)
        if dp_eval(X, Y, transpose(Z), t, r, s, field, cap) != base * ((-1) ** s):
            fail("z-sign", ctx)

        g = _random_invertible(R, rng, field)
        lhs = dp_eval(matmul(g, X, field), matmul(matmul(g, Y, field), transpose(g), field), Z, t, r, s, field, cap)
        if lhs != base * numeric_determinant(g, field):
            fail("left-g", f"{ctx} g={g}")

        h = _random_invertible(S, rng, field)
        lhs = dp_eval(matmul(X, h, field), Y, matmul(matmul(transpose(h), Z, field), h, field), t, r, s, field, cap)
        if lhs != base * numeric_determinant(h, field):
            fail("right-h", f"{ctx} h={h}")

    labels = {
        "transpose": "DP_{s,r}(Xᵀ,Z,Y) = DP_{r,s}(X,Y,Z)",
        "y-sign": "DP(X,Yᵀ,Z) = (−1)^r DP",
        "z-sign": "DP(X,Y,Zᵀ) = (−1)^s DP",
        "left-g": "DP(gX,gYgᵀ,Z) = det(g) DP",
        "right-h": "DP(Xh,Y,hᵀZh) = det(h) DP",
    }
    for name, label in labels.items():
        n_fail = failures[name]
        report.add(
            name,
            n_fail == 0,
            f"{label}: {trials - n_fail}/{trials} trials",
            examples.get(name),
        )
    log.info("DP suite finished", t=t, r=r, s=s, trials=trials, passed=report.passed)
    return report
