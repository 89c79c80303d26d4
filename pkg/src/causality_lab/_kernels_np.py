"""Pure-numpy kernel implementations.

Reference twins of the numba kernels in _kernels_nb. Semantics must match
step for step; the numba module is the compiled version of exactly this
algorithm. Metric kinds are encoded as integers so trajectories never call
back into Python objects:

    base_kind 0: flat chart, metric diag(1, ..., 1, -1)
    base_kind 1: circle cylinder, same metric, coordinate 0 periodic
    base_kind 2: sphere cylinder S^n x interval, hyperspherical angles

An optional log-affine conformal factor exp(c . x + c0) multiplies the
diagonal. Time is always the last coordinate.
"""
import numpy as np

TWO_PI = 2.0 * np.pi

TERM_SPAN = 0
TERM_DOMAIN = 1
TERM_EXCISION = 2

# Keep chart spacing of adjacent samples under ~2*step for unit-scale metrics.
SPACING_FACTOR = 1.8


def wrap_angle(x):
    """Reduce angle differences to (-pi, pi]."""
    r = np.asarray(x) % TWO_PI
    return np.where(r > np.pi, r - TWO_PI, r)


def metric_diag(base_kind, n_sph, conf_on, conf_c, x):
    """Diagonal metric entries at chart points x of shape (..., d)."""
    x = np.asarray(x, dtype=float)
    d = x.shape[-1]
    out = np.ones(x.shape)
    out[..., -1] = -1.0
    if base_kind == 2 and n_sph >= 2:
        s = np.cumprod(np.sin(x[..., : n_sph - 1]) ** 2, axis=-1)
        out[..., 1:n_sph] = s
    if conf_on:
        om = np.exp(x @ conf_c[:d] + conf_c[d])
        out = out * om[..., None]
    return out


def _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x, v):
    d = x.shape[0]
    if not conf_on and base_kind != 2:
        return np.zeros(d)
    g = metric_diag(base_kind, n_sph, conf_on, conf_c, x)
    if conf_on:
        eye = np.eye(d) * fd_h
        gp = metric_diag(base_kind, n_sph, conf_on, conf_c, x + eye)
        gm = metric_diag(base_kind, n_sph, conf_on, conf_c, x - eye)
        dg = (gp - gm) / (2.0 * fd_h)  # dg[a, b] = d g_bb / d x_a
    else:
        dg = np.zeros((d, d))
        for a in range(n_sph - 1):
            cot = np.cos(x[a]) / np.sin(x[a])
            dg[a, a + 1 : n_sph] = 2.0 * cot * g[a + 1 : n_sph]
    s1 = dg.T @ v
    s2 = dg @ (v * v)
    return -(v * s1 - 0.5 * s2) / g


def _project_null(base_kind, n_sph, conf_on, conf_c, x, v):
    g = metric_diag(base_kind, n_sph, conf_on, conf_c, x)
    a = float(np.dot(g[:-1] * v[:-1], v[:-1]))
    b = -g[-1] * v[-1] * v[-1]
    if a > 0.0 and b > 0.0:
        v[:-1] *= np.sqrt(b / a)


def _hole_entry(x, xn, periodic, hole_c, hole_r):
    """Smallest u in [0, 1] where segment x -> xn enters a hole ball, else (2, -1)."""
    if hole_c.shape[0] == 0:
        return 2.0, -1
    delta = xn - x
    w = hole_c - x[None, :]
    mask = periodic != 0
    if mask.any():
        w[:, mask] = wrap_angle(w[:, mask])
    dd2 = float(delta @ delta)
    wd = w @ delta
    ww = (w * w).sum(axis=1)
    r2 = hole_r * hole_r
    u = np.full(hole_c.shape[0], 2.0)
    inside = ww <= r2
    u[inside] = 0.0
    if dd2 > 0.0:
        disc = wd * wd - dd2 * (ww - r2)
        valid = (~inside) & (disc > 0.0)
        if valid.any():
            uv = (wd[valid] - np.sqrt(disc[valid])) / dd2
            uok = (uv >= 0.0) & (uv <= 1.0)
            idx = np.nonzero(valid)[0][uok]
            u[idx] = uv[uok]
    j = int(np.argmin(u))
    return float(u[j]), (j if u[j] <= 1.0 else -1)


def integrate_null_raw(base_kind, n_sph, conf_on, conf_c, x0, v0, step, max_span,
                       lo, hi, periodic, hole_c, hole_r, fd_h, n_cap):
    """Integrate the null geodesic flow with per-step null projection.

    Returns (s, points, velocities, term_code, hole_id, hit_point). The step
    size adapts down when the chart velocity grows so adjacent samples stay
    within ~2*step of each other.
    """
    d = x0.shape[0]
    xs = np.empty((n_cap, d))
    vs = np.empty((n_cap, d))
    ss = np.empty(n_cap)
    xs[0] = x0
    vs[0] = v0
    _project_null(base_kind, n_sph, conf_on, conf_c, xs[0], vs[0])
    ss[0] = 0.0
    nonper = periodic == 0
    term = TERM_SPAN
    hole_id = -1
    hit = np.zeros(d)
    n = 0
    s = 0.0
    while s < max_span * (1.0 - 1e-15) and n < n_cap - 1:
        x = xs[n]
        v = vs[n]
        vnorm = float(np.sqrt(v @ v))
        h = step if vnorm <= SPACING_FACTOR else SPACING_FACTOR * step / vnorm
        if s + h > max_span:
            h = max_span - s
        a1 = _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x, v)
        x2 = x + 0.5 * h * v
        v2 = v + 0.5 * h * a1
        a2 = _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x2, v2)
        x3 = x + 0.5 * h * v2
        v3 = v + 0.5 * h * a2
        a3 = _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x3, v3)
        x4 = x + h * v3
        v4 = v + h * a3
        a4 = _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x4, v4)
        xn = x + (h / 6.0) * (v + 2.0 * v2 + 2.0 * v3 + v4)
        vn = v + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4)
        _project_null(base_kind, n_sph, conf_on, conf_c, xn, vn)
        u, j = _hole_entry(x, xn, periodic, hole_c, hole_r)
        if j >= 0:
            term = TERM_EXCISION
            hole_id = j
            hit = x + u * (xn - x)
            break
        if not np.all((lo[nonper] < xn[nonper]) & (xn[nonper] < hi[nonper])):
            term = TERM_DOMAIN
            break
        n += 1
        s += h
        xs[n] = xn
        vs[n] = vn
        ss[n] = s
    return ss[: n + 1].copy(), xs[: n + 1].copy(), vs[: n + 1].copy(), term, hole_id, hit


def longest_path_raw(wrap0, conf_on, conf_c, pts, src, dst, horizon):
    """Longest proper-time path src -> dst over implicit chronology edges.

    pts must be sorted ascending in the time coordinate (last column). An
    edge i -> j exists when j is strictly inside i's future cone and the
    chart chord is no longer than horizon; its weight is the proper time of
    the straight chord (midpoint conformal factor applied when conf_on).
    Returns -1.0 when dst is unreachable.
    """
    pts = np.asarray(pts, dtype=float)
    n, d = pts.shape
    t = pts[:, -1]
    dist = np.full(n, -1.0)
    dist[src] = 0.0
    hor2 = horizon * horizon
    i0 = 0
    for j in range(n):
        tj = t[j]
        while t[i0] < tj - horizon - 1e-12:
            i0 += 1
        if i0 >= j:
            continue
        di = dist[i0:j]
        dt = tj - t[i0:j]
        dx = pts[j, :-1] - pts[i0:j, :-1]
        if wrap0:
            dx[:, 0] = wrap_angle(dx[:, 0])
        dx2 = (dx * dx).sum(axis=1)
        tau2 = dt * dt - dx2
        ok = (di >= 0.0) & (dt > 0.0) & (tau2 > 0.0) & (dx2 + dt * dt <= hor2)
        if not ok.any():
            continue
        w = np.sqrt(tau2[ok])
        if conf_on:
            mid = 0.5 * (pts[j] + pts[i0:j][ok])
            w = w * np.sqrt(np.exp(mid @ conf_c[:d] + conf_c[d]))
        cand = float((di[ok] + w).max())
        if cand > dist[j]:
            dist[j] = cand
    return float(dist[dst])
