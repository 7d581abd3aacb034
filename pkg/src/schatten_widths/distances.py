"""Distance from a matrix to a subspace, measured in a Schatten norm.

``distance_schatten(x, basis, q)`` returns ``min_w ||x - basis(w)||_q``
together with the minimizing residual, which is what gradient-based outer
searches need (the envelope theorem makes the residual's norm gradient the
derivative of the distance in ``x``).

Solvers by exponent:

* ``q == 2``: Frobenius projection, closed form.
* ``1 <= q < inf``: iteratively reweighted least squares on the matrix,
  with spectral weights ``(residual residual^T + ridge)^{(q-2)/2}`` and a
  damped, monotone line search.  Convex, so the local solution is global.
* ``q == inf``: a homotopy that follows the IRLS solution through
  increasing finite exponents and reports the true spectral norm at the
  final coefficients (a slight overestimate of the exact distance).
* ``0 < q < 1``: the same IRLS iteration run as a damped local heuristic;
  the problem is nonconvex, so the value is an upper bound on the true
  distance and ``converged`` only reflects stabilization.
"""
from __future__ import annotations

import math
import weakref
from dataclasses import dataclass

import numpy as np

from .core import schatten_norm
from .exponents import as_exponent, is_infinite
from .operators import SubspaceBasis

__all__ = ["DistanceResult", "distance_schatten"]

# singular-value data of the orthonormal complement of codimension-1 bases,
# keyed by basis identity (bases are reused across many distance calls)
_CODIM_ONE_CACHE: "weakref.WeakKeyDictionary[SubspaceBasis, tuple]" = (
    weakref.WeakKeyDictionary()
)

_IRLS_RIDGE = 1e-10
_IRLS_TOL = 1e-9
_IRLS_MAX_ITER = 80
_HOMOTOPY_EXPONENTS = (4.0, 32.0, 128.0)


@dataclass(frozen=True)
class DistanceResult:
    """Outcome of a subspace-distance computation."""

    value: float
    residual: np.ndarray
    coefficients: np.ndarray
    converged: bool
    iterations: int


def _closed_form_frobenius(x: np.ndarray, basis: SubspaceBasis) -> DistanceResult:
    w = basis.coefficients(x)
    residual = x - basis.member(w)
    return DistanceResult(
        value=float(np.linalg.norm(residual, "fro")),
        residual=residual,
        coefficients=w,
        converged=True,
        iterations=0,
    )


# ---------------------------------------------------------------------------
# closed-form 2x2 fast path
#
# For 2x2 matrices the singular values are Euclidean norms of two linear
# images of the entries (the rotation/reflection split):
#   sigma_1 = |Cu r| + |Cv r|,  sigma_2 = ||Cu r| - |Cv r||
# with r the vectorized matrix.  Both image vectors are affine in the
# subspace coefficients, so every Schatten distance becomes a small convex
# (for q >= 1) problem over Gram matrices, solved here without any SVDs.
# ---------------------------------------------------------------------------

_CU = np.array([[0.5, 0.0, 0.0, 0.5], [0.0, -0.5, 0.5, 0.0]])
_CV = np.array([[0.5, 0.0, 0.0, -0.5], [0.0, 0.5, 0.5, 0.0]])


class _SplitPair:
    """Scalar Gram data for ``w -> (|u0 - Au w|, |v0 - Av w|)``, ``dim <= 2``.

    Everything is unrolled to plain floats: these solvers sit in the innermost
    loop of the ratio searches, where numpy's per-call overhead on 2-vectors
    dominates the actual arithmetic.
    """

    __slots__ = ("m", "cu", "cv", "bu1", "bu2", "bv1", "bv2",
                 "au11", "au12", "au22", "av11", "av12", "av22", "scale")

    def __init__(self, x: np.ndarray, basis: SubspaceBasis) -> None:
        x0, x1, x2, x3 = float(x[0, 0]), float(x[0, 1]), float(x[1, 0]), float(x[1, 1])
        u01, u02 = 0.5 * (x0 + x3), 0.5 * (x2 - x1)
        v01, v02 = 0.5 * (x0 - x3), 0.5 * (x2 + x1)
        cols = basis.columns
        self.m = basis.dim
        c = cols[:, 0]
        a_u = (0.5 * (c[0] + c[3]), 0.5 * (c[2] - c[1]))
        a_v = (0.5 * (c[0] - c[3]), 0.5 * (c[2] + c[1]))
        self.au11 = a_u[0] * a_u[0] + a_u[1] * a_u[1]
        self.av11 = a_v[0] * a_v[0] + a_v[1] * a_v[1]
        # residual is x - member(w): linear terms enter negated
        self.bu1 = -(a_u[0] * u01 + a_u[1] * u02)
        self.bv1 = -(a_v[0] * v01 + a_v[1] * v02)
        if self.m == 2:
            d = cols[:, 1]
            b_u = (0.5 * (d[0] + d[3]), 0.5 * (d[2] - d[1]))
            b_v = (0.5 * (d[0] - d[3]), 0.5 * (d[2] + d[1]))
            self.au22 = b_u[0] * b_u[0] + b_u[1] * b_u[1]
            self.av22 = b_v[0] * b_v[0] + b_v[1] * b_v[1]
            self.au12 = a_u[0] * b_u[0] + a_u[1] * b_u[1]
            self.av12 = a_v[0] * b_v[0] + a_v[1] * b_v[1]
            self.bu2 = -(b_u[0] * u01 + b_u[1] * u02)
            self.bv2 = -(b_v[0] * v01 + b_v[1] * v02)
        else:
            self.au22 = self.au12 = self.av22 = self.av12 = 0.0
            self.bu2 = self.bv2 = 0.0
        self.cu = u01 * u01 + u02 * u02
        self.cv = v01 * v01 + v02 * v02
        self.scale = math.sqrt(self.cu + self.cv) + 1e-300

    def norms(self, w1: float, w2: float) -> tuple[float, float]:
        pu = self.cu + w1 * (2.0 * self.bu1 + self.au11 * w1 + 2.0 * self.au12 * w2) \
            + w2 * (2.0 * self.bu2 + self.au22 * w2)
        pv = self.cv + w1 * (2.0 * self.bv1 + self.av11 * w1 + 2.0 * self.av12 * w2) \
            + w2 * (2.0 * self.bv2 + self.av22 * w2)
        return math.sqrt(pu if pu > 0.0 else 0.0), math.sqrt(pv if pv > 0.0 else 0.0)

    def value(self, qf: float, w1: float, w2: float) -> float:
        f1, f2 = self.norms(w1, w2)
        if qf == math.inf:
            return f1 + f2
        s1 = f1 + f2
        s2 = abs(f1 - f2)
        if s1 <= 0.0:
            return 0.0
        return (s1**qf + s2**qf) ** (1.0 / qf)

    def value_grad(self, qf: float, w1: float, w2: float):
        """``(value, g1, g2)`` of the Schatten-q residual norm at ``w``."""
        tu1 = self.bu1 + self.au11 * w1 + self.au12 * w2
        tu2 = self.bu2 + self.au12 * w1 + self.au22 * w2
        tv1 = self.bv1 + self.av11 * w1 + self.av12 * w2
        tv2 = self.bv2 + self.av12 * w1 + self.av22 * w2
        pu = self.cu + w1 * (self.bu1 + tu1) + w2 * (self.bu2 + tu2)
        pv = self.cv + w1 * (self.bv1 + tv1) + w2 * (self.bv2 + tv2)
        f1 = math.sqrt(pu if pu > 0.0 else 0.0)
        f2 = math.sqrt(pv if pv > 0.0 else 0.0)
        eps = 1e-13 * self.scale
        iu = 1.0 / (f1 if f1 > eps else eps)
        iv = 1.0 / (f2 if f2 > eps else eps)
        s1 = f1 + f2
        if s1 <= eps:
            return 0.0, 0.0, 0.0
        if qf == math.inf:
            return s1, tu1 * iu + tv1 * iv, tu2 * iu + tv2 * iv
        s2 = abs(f1 - f2)
        sgn = 1.0 if f1 >= f2 else -1.0
        val = (s1**qf + s2**qf) ** (1.0 / qf)
        d1 = (s1 / val) ** (qf - 1.0)
        d2 = (s2 / val) ** (qf - 1.0) if s2 > eps else 0.0
        cu_ = (d1 + sgn * d2) * iu
        cv_ = (d1 - sgn * d2) * iv
        return val, cu_ * tu1 + cv_ * tv1, cu_ * tu2 + cv_ * tv2

    def solve_weighted(self, wu: float, wv: float) -> tuple[float, float]:
        """Minimize ``wu*phi_u + wv*phi_v`` (weighted least squares)."""
        a11 = wu * self.au11 + wv * self.av11
        r1 = -(wu * self.bu1 + wv * self.bv1)
        if self.m == 1:
            return (r1 / a11 if a11 > 0.0 else 0.0), 0.0
        a12 = wu * self.au12 + wv * self.av12
        a22 = wu * self.au22 + wv * self.av22
        r2 = -(wu * self.bu2 + wv * self.bv2)
        ridge = 1e-13 * (a11 + a22) + 1e-300
        a11 += ridge
        a22 += ridge
        det = a11 * a22 - a12 * a12
        if det <= 0.0:
            return 0.0, 0.0
        return (r1 * a22 - r2 * a12) / det, (r2 * a11 - r1 * a12) / det

    def frobenius_start(self) -> tuple[float, float]:
        return self.solve_weighted(1.0, 1.0)


def _descent_scalar(
    sp: _SplitPair,
    qf: float,
    w1: float,
    w2: float,
    tol: float,
    max_iter: int,
) -> tuple[float, float, float]:
    """Damped gradient descent; returns ``(value, w1, w2)``.

    Convex for ``q >= 1``; for ``q < 1`` it is a local heuristic and callers
    combine several starts.
    """
    value, g1, g2 = sp.value_grad(qf, w1, w2)
    step = 0.5
    stall = 0
    for _ in range(max_iter):
        gn = math.hypot(g1, g2)
        if gn < 1e-14 * max(1.0, value / sp.scale):
            break
        d1, d2 = g1 / gn, g2 / gn
        improved = False
        while step > 1e-7:
            h = step * sp.scale
            t1, t2 = w1 - h * d1, w2 - h * d2
            tval, tg1, tg2 = sp.value_grad(qf, t1, t2)
            if tval < value:
                gain = value - tval
                w1, w2, value, g1, g2 = t1, t2, tval, tg1, tg2
                step = step * 1.5 if step < 1.5 else 2.0
                improved = True
                stall = stall + 1 if gain <= tol * max(value, 1e-30) else 0
                break
            step *= 0.5
        if not improved or stall >= 2:
            break
    return value, w1, w2


def _weber_scalar(
    sp: _SplitPair,
    w1: float,
    w2: float,
    tol: float,
    max_iter: int,
) -> tuple[float, float]:
    """Minimize ``|ru| + |rv|`` (the spectral norm) by damped Weiszfeld."""
    eps = 1e-13 * sp.scale
    f1, f2 = sp.norms(w1, w2)
    best = f1 + f2
    for _ in range(max_iter):
        s1, s2 = sp.solve_weighted(1.0 / max(f1, eps), 1.0 / max(f2, eps))
        step = 1.0
        improved = False
        while step > 1e-4:
            t1 = w1 + step * (s1 - w1)
            t2 = w2 + step * (s2 - w2)
            g1, g2 = sp.norms(t1, t2)
            val = g1 + g2
            if val <= best:
                gain = best - val
                w1, w2, f1, f2, best = t1, t2, g1, g2, val
                improved = True
                if gain <= tol * max(best, 1e-30):
                    return w1, w2
                break
            step *= 0.5
        if not improved:
            break
    return w1, w2


def _nuclear_exact_m1(sp: _SplitPair, t0: float) -> tuple[float, float]:
    """Exact 1-dof nuclear distance: ``2 max(|ru(t)|, |rv(t)|)``.

    A max of two convex sqrt-quadratics attains its minimum at a branch
    vertex or a branch crossing; crossings solve a quadratic.
    """
    candidates = [0.0, t0]
    if sp.au11 > 0.0:
        candidates.append(-sp.bu1 / sp.au11)
    if sp.av11 > 0.0:
        candidates.append(-sp.bv1 / sp.av11)
    a = sp.au11 - sp.av11
    b = 2.0 * (sp.bu1 - sp.bv1)
    c = sp.cu - sp.cv
    if abs(a) > 1e-300:
        disc = b * b - 4.0 * a * c
        if disc >= 0.0:
            root = math.sqrt(disc)
            candidates.append((-b - root) / (2.0 * a))
            candidates.append((-b + root) / (2.0 * a))
    elif abs(b) > 1e-300:
        candidates.append(-c / b)
    best_t, best_val = 0.0, math.inf
    for cand in candidates:
        f1, f2 = sp.norms(cand, 0.0)
        val = f1 if f1 >= f2 else f2
        if val < best_val:
            best_t, best_val = cand, val
    return best_t, 0.0


def _minimax_bisect_m2(sp: _SplitPair) -> tuple[float, float]:
    """Minimize ``max(|ru|, |rv|)`` exactly via its quadratic weight dual.

    ``max(|ru|,|rv|)^2 = max(phi_u, phi_v)`` is a max of convex quadratics,
    so Sion gives ``max_t min_w [(1-t) phi_u + t phi_v]`` with closed-form
    inner minimizers.  The envelope derivative at the inner minimizer is
    ``phi_v - phi_u``, which decreases in ``t``, so the optimal weight comes
    from bisection on the sign of ``phi_u - phi_v`` (increasing in ``t``).
    """

    def probe(t: float) -> tuple[float, float, float, float]:
        w1, w2 = sp.solve_weighted(1.0 - t, t)
        f1, f2 = sp.norms(w1, w2)
        return w1, w2, (f1 if f1 >= f2 else f2), f1 * f1 - f2 * f2

    best = probe(0.0)
    for t_end in (1.0, 0.5):
        cand = probe(t_end)
        if cand[2] < best[2]:
            best = cand
    lo, hi = 0.0, 1.0
    gap = probe(0.5)[3]
    tol_gap = 1e-13 * sp.scale * sp.scale
    for _ in range(40):
        if abs(gap) <= tol_gap or hi - lo < 1e-7:
            break
        if gap > 0.0:
            hi = 0.5 * (lo + hi)
        else:
            lo = 0.5 * (lo + hi)
        cand = probe(0.5 * (lo + hi))
        gap = cand[3]
        if cand[2] < best[2]:
            best = cand
    return best[0], best[1]


def _grid_min_m1(sp: _SplitPair, qf: float, extra: tuple[float, ...]) -> tuple[float, float]:
    """Global 1-dof minimization by bracketed grid plus golden polish.

    Used for quasi-norm exponents, where descent alone can stall on the
    nonsmooth rank-one manifold.  Candidates include the branch crossings
    (where the residual is exactly rank one, the typical quasi-norm
    minimizer), and the bracket comes from ``value >= sqrt(phi_u + phi_v)``,
    so any minimizer lies where the combined quadratic stays below the best
    known squared value.
    """
    t_frob = -(sp.bu1 + sp.bv1) / (sp.au11 + sp.av11)
    cands = [0.0, t_frob, *extra]
    ca = sp.au11 - sp.av11
    cb = 2.0 * (sp.bu1 - sp.bv1)
    cc = sp.cu - sp.cv
    if abs(ca) > 1e-300:
        disc = cb * cb - 4.0 * ca * cc
        if disc >= 0.0:
            root = math.sqrt(disc)
            cands.append((-cb - root) / (2.0 * ca))
            cands.append((-cb + root) / (2.0 * ca))
    elif abs(cb) > 1e-300:
        cands.append(-cc / cb)
    best_t, v0 = 0.0, math.inf
    for t in cands:
        val = sp.value(qf, t, 0.0)
        if val < v0:
            best_t, v0 = t, val
    a = sp.au11 + sp.av11
    b = sp.bu1 + sp.bv1
    c = sp.cu + sp.cv
    disc = b * b - a * (c - 1.05 * v0 * v0)
    if disc > 0.0 and a > 0.0:
        root = math.sqrt(disc)
        lo, hi = (-b - root) / a, (-b + root) / a
        steps = 24
        h = (hi - lo) / steps
        for k in range(steps + 1):
            t = lo + k * h
            val = sp.value(qf, t, 0.0)
            if val < v0:
                best_t, v0 = t, val
        lo, hi = best_t - h, best_t + h
    else:
        lo, hi = best_t - 0.5 * sp.scale, best_t + 0.5 * sp.scale
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - inv_phi * (hi - lo)
    x2 = lo + inv_phi * (hi - lo)
    f1 = sp.value(qf, x1, 0.0)
    f2 = sp.value(qf, x2, 0.0)
    for _ in range(40):
        if hi - lo < 1e-11 * max(1.0, sp.scale):
            break
        if f1 > f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv_phi * (hi - lo)
            f2 = sp.value(qf, x2, 0.0)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv_phi * (hi - lo)
            f1 = sp.value(qf, x1, 0.0)
    t_best = x1 if f1 <= f2 else x2
    if sp.value(qf, t_best, 0.0) > v0:
        t_best = best_t
    return t_best, 0.0


def _codim_one_distance(x: np.ndarray, basis: SubspaceBasis, q) -> DistanceResult:
    """Exact distance to a codimension-1 subspace, any exponent.

    The subspace is the trace-orthogonal complement of a single unit matrix
    ``Z``, so for ``q >= 1`` the distance is ``|<Z, x>| / ||Z||_{q*}`` with
    ``q*`` the dual exponent, achieved by the dual-norm-achieving direction
    scaled by the pairing.  For ``q <= 1`` the quasi-ball has the same
    rank-one extreme points as the nuclear ball, so the nuclear formula
    ``|<Z, x>| / sigma_1(Z)`` remains exact with a rank-one residual.
    """
    cached = _CODIM_ONE_CACHE.get(basis)
    if cached is None:
        u_full, _, _ = np.linalg.svd(basis.columns, full_matrices=True)
        z_vec = u_full[:, basis.dim]
        z_mat = z_vec.reshape(basis.N, basis.N)
        uz, sz, vzt = np.linalg.svd(z_mat)
        cached = (z_vec, uz, sz, vzt)
        _CODIM_ONE_CACHE[basis] = cached
    z_vec, uz, sz, vzt = cached
    pairing = float(z_vec @ x.reshape(-1))
    if is_infinite(q):
        dual_norm = float(np.sum(sz))
        gamma = np.ones_like(sz)
    else:
        qf = float(q)
        if qf <= 1.0:
            dual_norm = float(sz[0])
            gamma = np.zeros_like(sz)
            gamma[0] = 1.0
        else:
            qstar = qf / (qf - 1.0)
            dual_norm = float(np.sum(sz**qstar) ** (1.0 / qstar))
            gamma = (sz / dual_norm) ** (qstar - 1.0)
    achiever = (uz * gamma) @ vzt / dual_norm
    residual = pairing * achiever
    coefficients = basis.coefficients(x - residual)
    return DistanceResult(
        value=abs(pairing) / dual_norm,
        residual=residual,
        coefficients=coefficients,
        converged=True,
        iterations=0,
    )


def _distance_2x2(
    x: np.ndarray,
    basis: SubspaceBasis,
    q,
    w0: np.ndarray | None,
    tol: float,
    max_iter: int,
) -> DistanceResult:
    sp = _SplitPair(x, basis)
    qf = math.inf if is_infinite(q) else float(q)
    if w0 is not None:
        s1, s2 = float(w0[0]), (float(w0[1]) if sp.m == 2 else 0.0)
    elif qf >= 1.0:
        s1, s2 = sp.frobenius_start()
    else:
        s1 = s2 = 0.0

    if qf == 1.0:
        if sp.m == 1:
            w1, w2 = _nuclear_exact_m1(sp, s1)
        else:
            w1, w2 = _minimax_bisect_m2(sp)
    elif qf == math.inf:
        w1, w2 = _weber_scalar(sp, s1, s2, tol, min(max_iter, 25))
        _, w1, w2 = _descent_scalar(sp, qf, w1, w2, tol, min(max_iter, 30))
    elif qf > 1.0:
        _, w1, w2 = _descent_scalar(sp, qf, s1, s2, tol, max_iter)
    elif sp.m == 1:
        w1, w2 = _grid_min_m1(sp, qf, (s1,))
    else:
        # quasi-norm, 2 dof: several local starts plus the rank-one
        # (minimax) candidate, keep the best
        m1, m2 = _minimax_bisect_m2(sp)
        starts = [(s1, s2), sp.frobenius_start(), (m1, m2)]
        best_val, w1, w2 = math.inf, 0.0, 0.0
        for c1, c2 in starts:
            val, r1, r2 = _descent_scalar(sp, qf, c1, c2, tol, min(max_iter, 60))
            if val < best_val:
                best_val, w1, w2 = val, r1, r2

    if sp.m == 1:
        w = np.array([w1])
    else:
        w = np.array([w1, w2])
    residual = x - basis.member(w)
    return DistanceResult(
        value=schatten_norm(residual, q),
        residual=residual,
        coefficients=w,
        converged=True,
        iterations=0,
    )


def _spectral_weight(residual: np.ndarray, q: float) -> np.ndarray:
    """Symmetric PSD weight ``(R R^T + ridge I)^{(q-2)/2}``."""
    gram = residual @ residual.T
    scale = float(np.trace(gram))
    ridge = _IRLS_RIDGE * (scale if scale > 0 else 1.0)
    vals, vecs = np.linalg.eigh(gram + ridge * np.eye(gram.shape[0]))
    vals = np.maximum(vals, ridge * 1e-3)
    return (vecs * vals ** ((q - 2.0) / 2.0)) @ vecs.T


def _irls(
    x: np.ndarray,
    basis: SubspaceBasis,
    q: float,
    w0: np.ndarray | None,
    tol: float,
    max_iter: int,
) -> DistanceResult:
    """Minimize ``||x - basis(w)||_q`` by reweighted least squares."""
    m = basis.dim
    cols = basis.basis_matrices()
    w = np.zeros(m) if w0 is None else np.array(w0, dtype=float)

    def objective(coeffs: np.ndarray) -> tuple[float, np.ndarray]:
        residual = x - basis.member(coeffs)
        return schatten_norm(residual, q), residual

    best_val, residual = objective(w)
    converged = False
    iterations = 0
    stall = 0
    for iterations in range(1, max_iter + 1):
        weight = _spectral_weight(residual, q)
        gram = np.empty((m, m))
        rhs = np.empty(m)
        wcols = [weight @ c for c in cols]
        for k in range(m):
            rhs[k] = float(np.sum(wcols[k] * x))
            for l in range(k, m):
                gram[k, l] = gram[l, k] = float(np.sum(wcols[k] * cols[l]))
        try:
            w_star = np.linalg.solve(gram, rhs)
        except np.linalg.LinAlgError:
            w_star = np.linalg.lstsq(gram, rhs, rcond=None)[0]

        # damped line search toward the reweighted solution
        step = 1.0
        accepted = False
        while step > 1e-6:
            trial = w + step * (w_star - w)
            trial_val, trial_res = objective(trial)
            if trial_val <= best_val * (1 + 1e-14):
                improvement = best_val - trial_val
                w, residual = trial, trial_res
                prev = best_val
                best_val = trial_val
                accepted = True
                if improvement <= tol * max(prev, 1e-30):
                    stall += 1
                else:
                    stall = 0
                break
            step *= 0.5
        if not accepted:
            stall += 1
        if stall >= 2:
            converged = True
            break
    return DistanceResult(
        value=best_val,
        residual=residual,
        coefficients=w,
        converged=converged,
        iterations=iterations,
    )


def _spectral_homotopy(
    x: np.ndarray,
    basis: SubspaceBasis,
    w0: np.ndarray | None,
    tol: float,
    max_iter: int,
) -> DistanceResult:
    w = w0
    total = 0
    converged = True
    for q_eff in _HOMOTOPY_EXPONENTS:
        stage = _irls(x, basis, q_eff, w, tol, max_iter)
        w = stage.coefficients
        total += stage.iterations
        converged = converged and stage.converged
    residual = x - basis.member(w)
    return DistanceResult(
        value=schatten_norm(residual, math.inf),
        residual=residual,
        coefficients=w,
        converged=converged,
        iterations=total,
    )


def distance_schatten(
    x: np.ndarray,
    basis: SubspaceBasis,
    q,
    *,
    warm_start: np.ndarray | None = None,
    tol: float = _IRLS_TOL,
    max_iter: int = _IRLS_MAX_ITER,
) -> DistanceResult:
    """Distance from ``x`` to the subspace in the Schatten-``q`` norm."""
    q = as_exponent(q)
    x = np.asarray(x, dtype=float)
    if x.shape != (basis.N, basis.N):
        raise ValueError(f"x must be {basis.N}x{basis.N}, got {x.shape}")
    if basis.dim == 0:
        return DistanceResult(
            value=schatten_norm(x, q),
            residual=x.copy(),
            coefficients=np.zeros(0),
            converged=True,
            iterations=0,
        )
    if q == 2:
        return _closed_form_frobenius(x, basis)
    if basis.dim == basis.N * basis.N - 1:
        return _codim_one_distance(x, basis, q)
    if basis.N == 2:
        return _distance_2x2(x, basis, q, warm_start, tol, max_iter)
    if is_infinite(q):
        start = warm_start
        if start is None:
            start = basis.coefficients(x)
        return _spectral_homotopy(x, basis, start, tol, max_iter)
    qf = float(q)
    start = warm_start
    if start is None and qf >= 1:
        # Frobenius projection is a sound convex-case warm start.
        start = basis.coefficients(x)
    return _irls(x, basis, qf, start, tol, max_iter)
