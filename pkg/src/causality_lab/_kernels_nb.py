"""Numba-compiled kernels. Loop twins of _kernels_np with identical
semantics; see that module for the metric kind encoding."""
import math

import numba as nb
import numpy as np

TWO_PI = 2.0 * math.pi

TERM_SPAN = 0
TERM_DOMAIN = 1
TERM_EXCISION = 2

SPACING_FACTOR = 1.8


@nb.njit(cache=True, inline="always")
def _wrap(x):
    r = x % TWO_PI
    if r > math.pi:
        r -= TWO_PI
    return r


@nb.njit(cache=True)
def _metric_diag(base_kind, n_sph, conf_on, conf_c, x, out):
    d = x.shape[0]
    for i in range(d - 1):
        out[i] = 1.0
    out[d - 1] = -1.0
    if base_kind == 2 and n_sph >= 2:
        s = 1.0
        for b in range(1, n_sph):
            sb = math.sin(x[b - 1])
            s *= sb * sb
            out[b] = s
    if conf_on != 0:
        w = conf_c[d]
        for i in range(d):
            w += conf_c[i] * x[i]
        om = math.exp(w)
        for i in range(d):
            out[i] *= om


@nb.njit(cache=True)
def _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x, v, g, gp, gm, xw, dg, out):
    d = x.shape[0]
    if conf_on == 0 and base_kind != 2:
        for a in range(d):
            out[a] = 0.0
        return
    _metric_diag(base_kind, n_sph, conf_on, conf_c, x, g)
    if conf_on != 0:
        for i in range(d):
            xw[i] = x[i]
        for a in range(d):
            xa = xw[a]
            xw[a] = xa + fd_h
            _metric_diag(base_kind, n_sph, conf_on, conf_c, xw, gp)
            xw[a] = xa - fd_h
            _metric_diag(base_kind, n_sph, conf_on, conf_c, xw, gm)
            xw[a] = xa
            for b in range(d):
                dg[a, b] = (gp[b] - gm[b]) / (2.0 * fd_h)
    else:
        for a in range(d):
            for b in range(d):
                dg[a, b] = 0.0
        for a in range(n_sph - 1):
            cot = math.cos(x[a]) / math.sin(x[a])
            for b in range(a + 1, n_sph):
                dg[a, b] = 2.0 * cot * g[b]
    for a in range(d):
        s1 = 0.0
        s2 = 0.0
        for b in range(d):
            s1 += dg[b, a] * v[b]
            s2 += dg[a, b] * v[b] * v[b]
        out[a] = -(v[a] * s1 - 0.5 * s2) / g[a]


@nb.njit(cache=True)
def _project_null(base_kind, n_sph, conf_on, conf_c, x, v, g):
    d = x.shape[0]
    _metric_diag(base_kind, n_sph, conf_on, conf_c, x, g)
    a = 0.0
    for i in range(d - 1):
        a += g[i] * v[i] * v[i]
    b = -g[d - 1] * v[d - 1] * v[d - 1]
    if a > 0.0 and b > 0.0:
        f = math.sqrt(b / a)
        for i in range(d - 1):
            v[i] *= f


@nb.njit(cache=True)
def _seg_ball_entry(x, xn, periodic, c, r):
    """Smallest u in [0, 1] where segment x -> xn enters the ball, else 2."""
    d = x.shape[0]
    dd2 = 0.0
    wd = 0.0
    ww = 0.0
    for i in range(d):
        de = xn[i] - x[i]
        wi = c[i] - x[i]
        if periodic[i] != 0:
            wi = _wrap(wi)
        dd2 += de * de
        wd += wi * de
        ww += wi * wi
    r2 = r * r
    if ww <= r2:
        return 0.0
    if dd2 <= 0.0:
        return 2.0
    disc = wd * wd - dd2 * (ww - r2)
    if disc <= 0.0:
        return 2.0
    u = (wd - math.sqrt(disc)) / dd2
    if 0.0 <= u <= 1.0:
        return u
    return 2.0


@nb.njit(cache=True)
def integrate_null_raw(base_kind, n_sph, conf_on, conf_c, x0, v0, step, max_span,
                       lo, hi, periodic, hole_c, hole_r, fd_h, n_cap):
    d = x0.shape[0]
    xs = np.empty((n_cap, d))
    vs = np.empty((n_cap, d))
    ss = np.empty(n_cap)
    g = np.empty(d)
    gp = np.empty(d)
    gm = np.empty(d)
    xw = np.empty(d)
    dg = np.empty((d, d))
    a1 = np.empty(d)
    a2 = np.empty(d)
    a3 = np.empty(d)
    a4 = np.empty(d)
    x2 = np.empty(d)
    v2 = np.empty(d)
    x3 = np.empty(d)
    v3 = np.empty(d)
    x4 = np.empty(d)
    v4 = np.empty(d)
    xn = np.empty(d)
    vn = np.empty(d)
    hit = np.zeros(d)
    for i in range(d):
        xs[0, i] = x0[i]
        vs[0, i] = v0[i]
    _project_null(base_kind, n_sph, conf_on, conf_c, xs[0], vs[0], g)
    ss[0] = 0.0
    term = TERM_SPAN
    hole_id = -1
    n = 0
    s = 0.0
    while s < max_span * (1.0 - 1e-15) and n < n_cap - 1:
        x = xs[n]
        v = vs[n]
        vn2 = 0.0
        for i in range(d):
            vn2 += v[i] * v[i]
        vnorm = math.sqrt(vn2)
        h = step
        if vnorm > SPACING_FACTOR:
            h = SPACING_FACTOR * step / vnorm
        if s + h > max_span:
            h = max_span - s
        _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x, v, g, gp, gm, xw, dg, a1)
        for i in range(d):
            x2[i] = x[i] + 0.5 * h * v[i]
            v2[i] = v[i] + 0.5 * h * a1[i]
        _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x2, v2, g, gp, gm, xw, dg, a2)
        for i in range(d):
            x3[i] = x[i] + 0.5 * h * v2[i]
            v3[i] = v[i] + 0.5 * h * a2[i]
        _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x3, v3, g, gp, gm, xw, dg, a3)
        for i in range(d):
            x4[i] = x[i] + h * v3[i]
            v4[i] = v[i] + h * a3[i]
        _accel(base_kind, n_sph, conf_on, conf_c, fd_h, x4, v4, g, gp, gm, xw, dg, a4)
        for i in range(d):
            xn[i] = x[i] + (h / 6.0) * (v[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i])
            vn[i] = v[i] + (h / 6.0) * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i])
        _project_null(base_kind, n_sph, conf_on, conf_c, xn, vn, g)
        ubest = 2.0
        jbest = -1
        for j in range(hole_c.shape[0]):
            u = _seg_ball_entry(x, xn, periodic, hole_c[j], hole_r[j])
            if u < ubest:
                ubest = u
                jbest = j
        if jbest >= 0 and ubest <= 1.0:
            term = TERM_EXCISION
            hole_id = jbest
            for i in range(d):
                hit[i] = x[i] + ubest * (xn[i] - x[i])
            break
        inside = True
        for i in range(d):
            if periodic[i] == 0 and not (lo[i] < xn[i] < hi[i]):
                inside = False
                break
        if not inside:
            term = TERM_DOMAIN
            break
        n += 1
        s += h
        for i in range(d):
            xs[n, i] = xn[i]
            vs[n, i] = vn[i]
        ss[n] = s
    return ss[: n + 1].copy(), xs[: n + 1].copy(), vs[: n + 1].copy(), term, hole_id, hit


@nb.njit(cache=True)
def longest_path_raw(wrap0, conf_on, conf_c, pts, src, dst, horizon):
    n, d = pts.shape
    dist = np.full(n, -1.0)
    dist[src] = 0.0
    hor2 = horizon * horizon
    i0 = 0
    for j in range(n):
        tj = pts[j, d - 1]
        while pts[i0, d - 1] < tj - horizon - 1e-12:
            i0 += 1
        best = dist[j]
        for i in range(i0, j):
            di = dist[i]
            if di < 0.0:
                continue
            dt = tj - pts[i, d - 1]
            if dt <= 0.0:
                continue
            dx2 = 0.0
            for k in range(d - 1):
                de = pts[j, k] - pts[i, k]
                if k == 0 and wrap0 != 0:
                    de = _wrap(de)
                dx2 += de * de
            if dx2 + dt * dt > hor2:
                continue
            tau2 = dt * dt - dx2
            if tau2 <= 0.0:
                continue
            w = math.sqrt(tau2)
            if conf_on != 0:
                wexp = conf_c[d]
                for k in range(d):
                    wexp += conf_c[k] * 0.5 * (pts[j, k] + pts[i, k])
                w *= math.sqrt(math.exp(wexp))
            cand = di + w
            if cand > best:
                best = cand
        if best > dist[j]:
            dist[j] = best
    return dist[dst]
