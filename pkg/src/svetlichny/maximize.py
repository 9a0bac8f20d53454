"""Maximal Bell-type expectation values for 3-qubit states.

Closed-form maxima and canonical optimal measurement settings for the GGHZ
and maximal-slice families, a seeded multi-start Nelder-Mead maximizer over
all twelve measurement angles for arbitrary states, and the tangle bound
check |S^2/16 - 1| <= tau <= S^2/32 over the 3-parameter family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bell import DPrimeSetting, SvetlichnySetting, bb_from_dd
from .entanglement import three_tangle
from .qalg import PAULIS, Direction
from .states import PureState3, three_param

TAU_KINK = 1.0 / 3.0
SMAX_CEILING = 4.0 * math.sqrt(2.0)
BOUND_TOL = 1e-7

_HALF_PI = math.pi / 2.0
_QUARTER_PI = math.pi / 4.0

# Per-restart Nelder-Mead configuration; restarts are drawn uniformly from
# theta in [0, pi], phi in [0, 2*pi) by a seeded generator.
_NM_MAXITER = 5000
_NM_FATOL = 1e-10
_NM_XATOL = 1e-8
_NM_STEP = 1.0
_NM_POLISH_STEP = 0.1
_AGREE_TOL = 1e-6


@dataclass(frozen=True)
class OptResult:
    """Best |<S>| found by the multi-start search."""

    s_max: float
    setting: SvetlichnySetting
    restarts_used: int
    best_restart: int
    converged: bool
    iterations: int


@dataclass(frozen=True)
class BoundReport:
    """Tangle-vs-S_max bound check for one 3-parameter-family state.

    Slacks are signed so that a nonnegative value means the bound holds:
    lower_slack = tau - |s^2/16 - 1|, upper_slack = s^2/32 - tau.
    """

    tau: float
    s_max: float
    lower_ok: bool
    upper_ok: bool
    lower_slack: float
    upper_slack: float


def _check_tau(tau: float) -> None:
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")


def smax_gghz_analytic(tau: float) -> float:
    """Largest Svetlichny expectation of a GGHZ state with 3-tangle tau.

    4*sqrt(1 - tau) up to the kink at tau = 1/3, then 4*sqrt(2*tau).  The
    curve dips to 4*sqrt(2/3) at the kink and crosses the hybrid-realism
    bound 4 at tau = 1/2, so GGHZ states with tau <= 1/2 do not violate
    the inequality.
    """
    _check_tau(tau)
    if tau <= TAU_KINK:
        return 4.0 * math.sqrt(1.0 - tau)
    return 4.0 * math.sqrt(2.0 * tau)


def smax_ms_analytic(tau: float) -> float:
    """Largest Svetlichny expectation of a maximal-slice state: 4*sqrt(1 + tau)."""
    _check_tau(tau)
    return 4.0 * math.sqrt(1.0 + tau)


def _equatorial_bb() -> tuple[Direction, Direction]:
    # d along +x, d' along -y, mixing angle pi/4; phi_d - phi_d' = pi/2.
    dd = DPrimeSetting(
        d=Direction(_HALF_PI, 0.0),
        d_prime=Direction(_HALF_PI, 1.5 * math.pi),
        theta=_QUARTER_PI,
    )
    return bb_from_dd(dd)


def gghz_xy_setting() -> SvetlichnySetting:
    """Fixed equatorial setting with azimuth sums 0, 0, 0, pi and phi_d - phi_d' = pi/2.

    On cos(t)|000> + sin(t)|111> its expectation is 4*sqrt(2)*sin(2t) for
    every t, which is what lets a fixed set of local measurements read off
    the tangle as S^2/32 even below the kink.  Coincides with
    optimal_setting_ms(pi/2).
    """
    b, b_prime = _equatorial_bb()
    return SvetlichnySetting(
        a=Direction(_HALF_PI, _QUARTER_PI),
        a_prime=Direction(_HALF_PI, 3.0 * _QUARTER_PI),
        b=b,
        b_prime=b_prime,
        c=Direction(_HALF_PI, 2.0 * math.pi - _QUARTER_PI),
        c_prime=Direction(_HALF_PI, _QUARTER_PI),
    )


def optimal_setting_gghz(theta1: float) -> SvetlichnySetting:
    """Measurement directions attaining smax_gghz_analytic on gghz(theta1).

    Below the kink all directions lie on the z-axis with c' anti-aligned;
    from the kink upwards the equatorial set is returned.  Axis/azimuth
    flips keep the signed expectation positive for every theta1.
    """
    sin2 = math.sin(2.0 * theta1)
    tau = sin2 * sin2
    if tau < TAU_KINK:
        z_up, z_down = Direction(0.0, 0.0), Direction(math.pi, 0.0)
        c, c_prime = (z_up, z_down) if math.cos(2.0 * theta1) >= 0.0 else (z_down, z_up)
        return SvetlichnySetting(a=z_up, a_prime=z_up, b=z_up, b_prime=z_up, c=c, c_prime=c_prime)
    setting = gghz_xy_setting()
    if sin2 < 0.0:
        # Negating both c and c' negates S.
        setting = SvetlichnySetting(
            a=setting.a,
            a_prime=setting.a_prime,
            b=setting.b,
            b_prime=setting.b_prime,
            c=Direction.canonical(setting.c.theta, setting.c.phi + math.pi),
            c_prime=Direction.canonical(setting.c_prime.theta, setting.c_prime.phi + math.pi),
        )
    return setting


def optimal_setting_ms(theta3: float) -> SvetlichnySetting:
    """Measurement directions attaining smax_ms_analytic on maximal_slice(theta3).

    Identical to the equatorial GGHZ set except that c and c' tilt out of
    the equator by tan(theta_c) = sqrt(2) tan(theta3).
    """
    b, b_prime = _equatorial_bb()
    norm = math.sqrt(1.0 + math.sin(theta3) ** 2)
    cos_c = math.cos(theta3) / norm
    sin_c = math.sqrt(2.0) * math.sin(theta3) / norm
    return SvetlichnySetting(
        a=Direction(_HALF_PI, _QUARTER_PI),
        a_prime=Direction(_HALF_PI, 3.0 * _QUARTER_PI),
        b=b,
        b_prime=b_prime,
        c=Direction.from_vector([sin_c * math.cos(-_QUARTER_PI), sin_c * math.sin(-_QUARTER_PI), cos_c]),
        c_prime=Direction.from_vector([sin_c * math.cos(_QUARTER_PI), sin_c * math.sin(_QUARTER_PI), cos_c]),
    )


def _correlation_tensor(state: PureState3) -> np.ndarray:
    """Real tensor T[i, j, k] = <sigma_i x sigma_j x sigma_k>."""
    psi = state.amplitudes.reshape(2, 2, 2)
    t = np.einsum("abc,iad,jbe,kcf,def->ijk", psi.conj(), PAULIS, PAULIS, PAULIS, psi, optimize=True)
    return np.ascontiguousarray(t.real)


def _correlation_matrix(psi4: np.ndarray) -> np.ndarray:
    """Real matrix M[i, j] = <sigma_i x sigma_j> for a 2-qubit state."""
    psi = psi4.reshape(2, 2)
    m = np.einsum("ab,iac,jbd,cd->ij", psi.conj(), PAULIS, PAULIS, psi, optimize=True)
    return np.ascontiguousarray(m.real)


def _unit_rows(x: np.ndarray) -> np.ndarray:
    """(m, 2*k) interleaved angles -> (m, k, 3) Cartesian unit vectors."""
    th = x[:, 0::2]
    ph = x[:, 1::2]
    st = np.sin(th)
    return np.stack([st * np.cos(ph), st * np.sin(ph), np.cos(th)], axis=-1)


def _svetlichny_values(t2: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Signed <S> for a batch of 12-angle rows (shape (m, 12) -> (m,)).

    <S> = <A B (C+C')> + <A B' (C-C')> + <A' B (C-C')> - <A' B' (C+C')>,
    each correlator a contraction of the correlation tensor with three unit
    vectors; algebraically identical to expectation(state,
    svetlichny_operator(.)).  t2 is the tensor flattened to (9, 3), or
    (m, 9, 3) when each row has its own state.
    """
    u = _unit_rows(x)
    a, a_p, b, b_p, c, c_p = (u[:, i, :] for i in range(6))
    if t2.ndim == 2:
        m_plus = ((c + c_p) @ t2.T).reshape(-1, 3, 3)
        m_minus = ((c - c_p) @ t2.T).reshape(-1, 3, 3)
    else:
        m_plus = np.matmul(t2, (c + c_p)[:, :, None]).reshape(-1, 3, 3)
        m_minus = np.matmul(t2, (c - c_p)[:, :, None]).reshape(-1, 3, 3)
    vb = np.matmul(m_plus, b[:, :, None])[:, :, 0] + np.matmul(m_minus, b_p[:, :, None])[:, :, 0]
    vb_p = np.matmul(m_minus, b[:, :, None])[:, :, 0] - np.matmul(m_plus, b_p[:, :, None])[:, :, 0]
    return (a * vb).sum(axis=1) + (a_p * vb_p).sum(axis=1)


def _chsh_values(m: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Signed <CHSH> for a batch of 8-angle rows (shape (r, 8) -> (r,))."""
    u = _unit_rows(x)
    a, a_p, b, b_p = (u[:, i, :] for i in range(4))
    return ((b + b_p) @ m.T * a).sum(axis=1) + ((b - b_p) @ m.T * a_p).sum(axis=1)


def _batched_nelder_mead(neg_fn, starts: np.ndarray, step: float = _NM_STEP):
    """Standard Nelder-Mead run independently on every start, in lockstep.

    All simplices advance together so candidate evaluations vectorize
    across restarts; each simplex follows the usual reflect / expand /
    contract / shrink rules and freezes once its function spread falls
    below 1e-10 and its vertex spread below 1e-8 (or at the 5000-iteration
    cap).  `neg_fn(x, rows)` receives the simplex row index of every x row
    so that each restart can carry its own objective data.  Returns (best f
    per restart, best vertex per restart, per-restart iteration counts).

    The simplices are kept unsorted; each iteration locates the worst and
    best vertices by reduction and maintains a running vertex sum for the
    centroid, which avoids re-sorting 13x12 blocks and keeps the per-row
    cost at a few candidate evaluations.
    """
    n_rows, n = starts.shape
    simplex = np.repeat(starts[:, None, :], n + 1, axis=1)
    diag = np.arange(n)
    simplex[:, 1 + diag, diag] += step
    fs = neg_fn(simplex.reshape(-1, n), np.repeat(np.arange(n_rows), n + 1)).reshape(n_rows, n + 1)
    vertex_sum = simplex.sum(axis=1)
    iterations = np.zeros(n_rows, dtype=int)
    act = np.arange(n_rows)

    for _ in range(_NM_MAXITER):
        fact = fs[act]
        ar = np.arange(act.size)
        worst_idx = fact.argmax(axis=1)
        f_worst = fact[ar, worst_idx]
        f_best = fact.min(axis=1)

        # Converged rows: function spread below fatol, then (only for those
        # few) vertex spread below xatol.
        f_ok = np.flatnonzero(f_worst - f_best <= _NM_FATOL)
        if f_ok.size:
            rows = act[f_ok]
            best_idx = fs[rows].argmin(axis=1)
            best_vertex = simplex[rows, best_idx][:, None, :]
            x_ok = np.abs(simplex[rows] - best_vertex).max(axis=(1, 2)) <= _NM_XATOL
            if x_ok.any():
                done = np.zeros(act.size, dtype=bool)
                done[f_ok[x_ok]] = True
                act = act[~done]
                if act.size == 0:
                    break
                fact = fs[act]
                ar = np.arange(act.size)
                worst_idx = fact.argmax(axis=1)
                f_worst = fact[ar, worst_idx]
                f_best = fact.min(axis=1)
        iterations[act] += 1
        ma = act.size

        tmp = fact.copy()
        tmp[ar, worst_idx] = -np.inf
        f_second = tmp.max(axis=1)

        worst_x = simplex[act, worst_idx]
        centroid = (vertex_sum[act] - worst_x) / n
        x_reflect = 2.0 * centroid - worst_x
        f_reflect = neg_fn(x_reflect, act)

        need_e = f_reflect < f_best
        out_con = (f_reflect >= f_second) & (f_reflect < f_worst)
        in_con = f_reflect >= f_worst
        idx_e = np.flatnonzero(need_e)
        idx_o = np.flatnonzero(out_con)
        idx_i = np.flatnonzero(in_con)
        x_expand = 3.0 * centroid[idx_e] - 2.0 * worst_x[idx_e]
        x_out = 1.5 * centroid[idx_o] - 0.5 * worst_x[idx_o]
        x_in = 0.5 * centroid[idx_i] + 0.5 * worst_x[idx_i]
        second = neg_fn(
            np.concatenate([x_expand, x_out, x_in]),
            np.concatenate([act[idx_e], act[idx_o], act[idx_i]]),
        )
        ne, no = idx_e.size, idx_o.size
        f_expand = second[:ne]
        f_out = second[ne : ne + no]
        f_in = second[ne + no :]

        new_x = x_reflect
        new_f = f_reflect.copy()
        took_e = f_expand < f_reflect[idx_e]
        new_x[idx_e[took_e]] = x_expand[took_e]
        new_f[idx_e[took_e]] = f_expand[took_e]
        took_o = f_out <= f_reflect[idx_o]
        new_x[idx_o[took_o]] = x_out[took_o]
        new_f[idx_o[took_o]] = f_out[took_o]
        took_i = f_in < f_worst[idx_i]
        new_x[idx_i[took_i]] = x_in[took_i]
        new_f[idx_i[took_i]] = f_in[took_i]

        shrink = np.zeros(ma, dtype=bool)
        shrink[idx_o[~took_o]] = True
        shrink[idx_i[~took_i]] = True
        moved = np.flatnonzero(~shrink)
        rows = act[moved]
        widx = worst_idx[moved]
        vertex_sum[rows] += new_x[moved] - simplex[rows, widx]
        simplex[rows, widx] = new_x[moved]
        fs[rows, widx] = new_f[moved]

        if shrink.any():
            sk = np.flatnonzero(shrink)
            rows = act[sk]
            best_idx = fs[rows].argmin(axis=1)
            best_vertex = simplex[rows, best_idx][:, None, :]
            simplex[rows] = best_vertex + 0.5 * (simplex[rows] - best_vertex)
            fs[rows] = neg_fn(
                simplex[rows].reshape(-1, n), np.repeat(rows, n + 1)
            ).reshape(rows.size, n + 1)
            vertex_sum[rows] = simplex[rows].sum(axis=1)

    best_idx = fs.argmin(axis=1)
    rows = np.arange(n_rows)
    return fs[rows, best_idx], simplex[rows, best_idx], iterations


def _random_starts(rng: np.random.Generator, budget: int, n_dirs: int) -> np.ndarray:
    starts = np.empty((budget, 2 * n_dirs))
    starts[:, 0::2] = rng.uniform(0.0, math.pi, size=(budget, n_dirs))
    starts[:, 1::2] = rng.uniform(0.0, 2.0 * math.pi, size=(budget, n_dirs))
    return starts


def _multistart(values_fn, n_dirs: int, budget: int, seed):
    """Maximize |values_fn| from `budget` seeded uniform random starts.

    Returns (per-restart best |value|, best value after polish, best restart
    index, best angle vector, total iteration count).  Ties break toward the
    lowest restart index, so the reduction is deterministic.  The winning
    restart is polished by one further Nelder-Mead run on a fresh small
    simplex, which un-sticks stalls on nearly flat landscapes; polishing
    never lowers the value.
    """
    neg_fn = lambda x, rows: -np.abs(values_fn(x))
    starts = _random_starts(np.random.default_rng(seed), budget, n_dirs)
    neg_best, best_xs, iterations = _batched_nelder_mead(neg_fn, starts)
    values = -neg_best
    best_idx = int(np.argmax(values))
    neg_pol, x_pol, it_pol = _batched_nelder_mead(
        neg_fn, best_xs[best_idx][None, :], step=_NM_POLISH_STEP
    )
    return (
        values,
        float(-neg_pol[0]),
        best_idx,
        x_pol[0],
        int(iterations.sum()) + int(it_pol[0]),
    )


def _setting_from_angles(x: np.ndarray) -> SvetlichnySetting:
    dirs = [Direction.canonical(float(x[2 * i]), float(x[2 * i + 1])) for i in range(6)]
    return SvetlichnySetting(*dirs)


def maximize_svetlichny(state: PureState3, budget: int = 64, seed=42) -> OptResult:
    """Multi-start maximization of |<S>| over all twelve measurement angles.

    Deterministic for a fixed seed.  `converged` is set when at least three
    restarts agree with the best value to within 1e-6 (a budget below 3 can
    therefore never set it).  The returned setting is normalized so that the
    signed expectation equals +s_max.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    t2 = _correlation_tensor(state).reshape(9, 3)
    values, s_max, best_idx, best_x, iterations = _multistart(
        lambda x: _svetlichny_values(t2, x), 6, budget, seed
    )
    if _svetlichny_values(t2, best_x[None, :])[0] < 0.0:
        best_x = best_x.copy()
        best_x[[9, 11]] += math.pi  # negate c and c', flipping the sign of S
    converged = bool(np.count_nonzero(values >= s_max - _AGREE_TOL) >= 3)
    return OptResult(
        s_max=s_max,
        setting=_setting_from_angles(best_x),
        restarts_used=budget,
        best_restart=best_idx,
        converged=converged,
        iterations=iterations,
    )


def smax_many(states, budget: int = 64, seed=42) -> np.ndarray:
    """Numerical S_max for many states at once.

    Equivalent to maximize_svetlichny(state, budget, seed=[seed, i]).s_max
    per state, but all restarts of all states share one lockstep search,
    which is much faster for large collections (used by the bound sweep).
    """
    states = list(states)
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if not states:
        return np.empty(0)
    tensors = np.stack([_correlation_tensor(s).reshape(9, 3) for s in states])
    t2_rows = np.repeat(tensors, budget, axis=0)
    starts = np.concatenate(
        [_random_starts(np.random.default_rng([seed, i]), budget, 6) for i in range(len(states))]
    )
    neg_best, best_xs, _ = _batched_nelder_mead(
        lambda x, rows: -np.abs(_svetlichny_values(t2_rows[rows], x)), starts
    )
    values = (-neg_best).reshape(len(states), budget)
    winners = values.argmax(axis=1)
    polish_starts = best_xs.reshape(len(states), budget, -1)[np.arange(len(states)), winners]
    neg_pol, _, _ = _batched_nelder_mead(
        lambda x, rows: -np.abs(_svetlichny_values(tensors[rows], x)),
        polish_starts,
        step=_NM_POLISH_STEP,
    )
    return np.maximum(values.max(axis=1), -neg_pol)


def chsh_max_pair(state, budget: int = 64, seed=42) -> float:
    """Numerical maximum of |<CHSH>| for a 2-qubit pure state over 8 angles."""
    if budget < 1:
        raise ValueError("budget must be at least 1")
    psi = np.asarray(getattr(state, "amplitudes", state), dtype=complex).reshape(-1)
    if psi.size != 4:
        raise ValueError(f"expected a 4-amplitude 2-qubit state, got size {psi.size}")
    psi = psi / np.linalg.norm(psi)
    m = _correlation_matrix(psi)
    _, best, _, _, _ = _multistart(lambda x: _chsh_values(m, x), 4, budget, seed)
    return best


def _bound_report(tau: float, s_max: float) -> BoundReport:
    lower_slack = tau - abs(s_max * s_max / 16.0 - 1.0)
    upper_slack = s_max * s_max / 32.0 - tau
    return BoundReport(
        tau=tau,
        s_max=s_max,
        lower_ok=bool(lower_slack >= -BOUND_TOL),
        upper_ok=bool(upper_slack >= -BOUND_TOL),
        lower_slack=float(lower_slack),
        upper_slack=float(upper_slack),
    )


def verify_family_bounds(theta1: float, theta2: float, theta3: float, budget: int = 64, seed=42) -> BoundReport:
    """Check |S^2/16 - 1| <= tau <= S^2/32 for one 3-parameter-family state.

    tau is recomputed from the state; S is the numerical maximum, so an
    optimizer that stalls below the true maximum can surface as a negative
    slack.
    """
    state = three_param(theta1, theta2, theta3)
    tau = three_tangle(state)
    s_max = maximize_svetlichny(state, budget=budget, seed=seed).s_max
    return _bound_report(tau, s_max)


def verify_family_bounds_many(triples, budget: int = 64, seed=42) -> list[BoundReport]:
    """Bound checks for many (theta1, theta2, theta3) triples in one sweep.

    Sample i uses the derived optimizer seed [seed, i].
    """
    triples = [tuple(t) for t in triples]
    states = [three_param(t1, t2, t3) for t1, t2, t3 in triples]
    taus = [three_tangle(s) for s in states]
    smaxes = smax_many(states, budget=budget, seed=seed)
    return [_bound_report(tau, float(s)) for tau, s in zip(taus, smaxes)]
