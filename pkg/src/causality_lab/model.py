"""Spacetime models: metric charts with time orientation, conformal
deformations, excised points, and declared causal-class flags.

Every model lives on a single global chart with the time coordinate last
(signature (+, ..., +, -)). Supported kinds:

    minkowski(m)        flat R^{m+1}
    cylinder(n)         S^n x (-pi, pi) with the unit round sphere metric;
                        n = 1 uses (theta, t) with theta periodic, n >= 2
                        uses hyperspherical angles (polar angles open (0, pi),
                        azimuth periodic)
    conformal           positive factor times a base metric
    excised             base minus small balls around point holes
    diamond             open chronological diamond of a flat base, used as a
                        causally convex sub-spacetime

Causal-class flags are declared metadata: built-in kinds ship correct flags,
excision resets them conservatively. Models are immutable; all operations
are pure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .defaults import EPS_HIT, EPS_NULL, FD_STEP
from .errors import (
    DimensionMismatchError,
    DomainError,
    HoleOutsideDomainError,
    MalformedSpecError,
    NonpositiveFactorError,
    SignatureCheckError,
)

TWO_PI = 2.0 * np.pi

KIND_CODE_FLAT = 0
KIND_CODE_CYL1 = 1
KIND_CODE_CYLN = 2


@dataclass(frozen=True)
class CausalFlags:
    """Declared causal-class membership; not computed."""
    strongly_causal: bool = True
    causally_simple: bool = True
    globally_hyperbolic: bool = True


@dataclass(frozen=True)
class LogAffineFactor:
    """Conformal factor exp(linear . x + const); closed under products and
    encodable into the compiled kernels."""
    linear: tuple[float, ...]
    const: float = 0.0

    def __call__(self, coords) -> float:
        x = np.asarray(coords, dtype=float)
        return float(np.exp(x @ np.asarray(self.linear) + self.const))

    def coeffs(self) -> np.ndarray:
        return np.concatenate([np.asarray(self.linear, dtype=float), [self.const]])


def exp_factor(linear: Sequence[float], const: float = 0.0) -> LogAffineFactor:
    """Factor exp(sum_i linear[i] * x_i + const)."""
    return LogAffineFactor(tuple(float(c) for c in linear), float(const))


def constant_factor(value: float) -> LogAffineFactor:
    if value <= 0:
        raise NonpositiveFactorError(f"constant factor must be positive, got {value}")
    return LogAffineFactor((), float(np.log(value)))


@dataclass(frozen=True, eq=False)
class SpacetimeModel:
    name: str
    kind: str
    m: int
    flags: CausalFlags
    base: "SpacetimeModel | None" = None
    # resolved chart data (time coordinate last)
    base_kind: int = KIND_CODE_FLAT
    n_sph: int = 0
    factors: tuple[Callable, ...] = ()
    conf_coeffs: np.ndarray | None = None  # combined log-affine coeffs, len dim+1
    kernel_ok: bool = True
    holes_c: np.ndarray = field(default_factory=lambda: np.zeros((0, 2)))
    holes_r: np.ndarray = field(default_factory=lambda: np.zeros(0))
    lo: np.ndarray = field(default_factory=lambda: np.array([-np.inf, -np.inf]))
    hi: np.ndarray = field(default_factory=lambda: np.array([np.inf, np.inf]))
    periodic: np.ndarray = field(default_factory=lambda: np.zeros(2, dtype=np.uint8))
    diamond: tuple[np.ndarray, np.ndarray] | None = None

    @property
    def dim(self) -> int:
        return self.m + 1

    # -- chart geometry -------------------------------------------------

    def chart_delta(self, a, b) -> np.ndarray:
        """b - a with periodic coordinates wrapped to (-pi, pi]."""
        d = np.asarray(b, dtype=float) - np.asarray(a, dtype=float)
        mask = self.periodic != 0
        if mask.any():
            d[mask] = kernels.wrap_angle(d[mask])
        return d

    def chart_distance(self, a, b) -> float:
        return float(np.linalg.norm(self.chart_delta(a, b)))

    # -- metric data -----------------------------------------------------

    def metric_diag_at(self, coords) -> np.ndarray:
        """Diagonal of the metric; all built-in charts are diagonal."""
        x = np.asarray(coords, dtype=float)
        if self.kernel_ok:
            return kernels.metric_diag(
                self.base_kind, self.n_sph, int(self.conf_coeffs is not None),
                self._kernel_coeffs(), x)
        diag = kernels.metric_diag(self.base_kind, self.n_sph, 0,
                                   np.zeros(self.dim + 1), x)
        for f in self.factors:
            val = f(x)
            diag = diag * val
        return diag

    def metric_at(self, coords) -> np.ndarray:
        """Full (m+1)x(m+1) metric matrix at a chart point."""
        self._check_dim(coords)
        return np.diag(self.metric_diag_at(coords))

    def time_orientation(self, coords) -> np.ndarray:
        """Future-directed timelike vector field (the chart d/dt)."""
        self._check_dim(coords)
        T = np.zeros(self.dim)
        T[-1] = 1.0
        return T

    def christoffel_at(self, coords, fd_h: float = FD_STEP) -> np.ndarray:
        """Christoffel symbols Gamma[a, b, c] by central differences of the
        metric. Generic path; the compiled kernels use their own evaluation."""
        x = np.asarray(coords, dtype=float)
        d = self.dim
        g = self.metric_at(x)
        ginv = np.linalg.inv(g)
        dg = np.empty((d, d, d))
        for a in range(d):
            e = np.zeros(d)
            e[a] = fd_h
            dg[a] = (self.metric_at(x + e) - self.metric_at(x - e)) / (2 * fd_h)
        # Gamma^a_bc = 1/2 g^{ad} (dg[b][d,c] + dg[c][d,b] - dg[d][b,c])
        gamma = 0.5 * np.einsum(
            "ad,bdc->abc", ginv, dg + np.transpose(dg, (2, 1, 0)) - np.transpose(dg, (1, 0, 2)))
        return gamma

    # -- domain ----------------------------------------------------------

    def contains(self, coords) -> bool:
        """True iff coords lies in the chart domain and outside all holes."""
        x = np.asarray(coords, dtype=float)
        if x.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected {self.dim} coordinates, got shape {x.shape}")
        nonper = self.periodic == 0
        if not np.all((self.lo[nonper] < x[nonper]) & (x[nonper] < self.hi[nonper])):
            return False
        if self.diamond is not None:
            a, b = self.diamond
            da = self.chart_delta(a, x)
            db = self.chart_delta(x, b)
            if not (da[-1] > np.linalg.norm(da[:-1]) and db[-1] > np.linalg.norm(db[:-1])):
                return False
        for c, r in zip(self.holes_c, self.holes_r):
            if np.linalg.norm(self.chart_delta(c, x)) <= r:
                return False
        return True

    def event(self, coords) -> "Event":
        return Event(self, np.asarray(coords, dtype=float))

    def _check_dim(self, coords):
        x = np.asarray(coords)
        if x.shape != (self.dim,):
            raise DimensionMismatchError(
                f"expected {self.dim} coordinates, got shape {x.shape}")

    def _kernel_coeffs(self) -> np.ndarray:
        if self.conf_coeffs is None:
            return np.zeros(self.dim + 1)
        return self.conf_coeffs

    def kernel_spec(self):
        """Arguments for the compiled kernels, or None when this model needs
        the generic python integrator (non-affine factor or diamond domain)."""
        if not self.kernel_ok or self.diamond is not None:
            return None
        return KernelSpec(
            base_kind=self.base_kind,
            n_sph=self.n_sph,
            conf_on=int(self.conf_coeffs is not None),
            conf_c=self._kernel_coeffs(),
            lo=self.lo,
            hi=self.hi,
            periodic=self.periodic,
            hole_c=self.holes_c,
            hole_r=self.holes_r,
        )

    # -- sampling and self-checks ----------------------------------------

    def sample_points(self, count: int) -> np.ndarray:
        """Deterministic low-discrepancy chart points inside the domain."""
        lo, hi = self._sample_box()
        pts = _r_sequence(4 * count + 64, self.dim) * (hi - lo) + lo
        keep = np.array([self.contains(p) for p in pts])
        pts = pts[keep]
        if pts.shape[0] < count:
            raise DomainError(f"could not draw {count} sample points in {self.name}")
        return pts[:count]

    def check_invariants(self, count: int = 128) -> None:
        """Signature, orientation, and factor positivity on a sample grid."""
        for p in self.sample_points(count):
            for f in self.factors:
                if not f(p) > 0:
                    raise NonpositiveFactorError(
                        f"conformal factor not positive at {p.tolist()}")
            diag = self.metric_diag_at(p)
            w = np.linalg.eigvalsh(np.diag(diag))
            if int((w < 0).sum()) != 1:
                raise SignatureCheckError(
                    f"{self.name}: signature is not ({self.m}, 1) at {p.tolist()}")
            T = self.time_orientation(p)
            if not diag[-1] * T[-1] * T[-1] < 0:
                raise SignatureCheckError(
                    f"{self.name}: time orientation not timelike at {p.tolist()}")

    def _sample_box(self):
        lo = np.where(np.isfinite(self.lo), self.lo, -2.0).astype(float)
        hi = np.where(np.isfinite(self.hi), self.hi, 2.0).astype(float)
        per = self.periodic != 0
        lo[per] = 0.0
        hi[per] = TWO_PI
        if self.diamond is not None:
            a, b = self.diamond
            mid = 0.5 * (a + b)
            lo = mid + 0.45 * (np.minimum(a, b) - mid)
            hi = mid + 0.45 * (np.maximum(a, b) - mid)
            if np.any(hi <= lo):
                lo, hi = mid - 0.1, mid + 0.1
        # shrink open interval ends slightly so boundary samples stay inside
        span = hi - lo
        return lo + 1e-3 * span, hi - 1e-3 * span


@dataclass(frozen=True, eq=False)
class Event:
    """A point in a model's chart. Constructing one validates the domain."""
    model: SpacetimeModel
    coords: np.ndarray

    def __post_init__(self):
        x = np.array(self.coords, dtype=float)
        x.flags.writeable = False
        object.__setattr__(self, "coords", x)
        if not self.model.contains(x):
            raise DomainError(
                f"coords {x.tolist()} outside domain of {self.model.name}")

    @property
    def t(self) -> float:
        return float(self.coords[-1])

    def __repr__(self):
        return f"Event({self.model.name}, {np.round(self.coords, 12).tolist()})"


@dataclass(frozen=True, eq=False)
class CausalVector:
    """Tangent vector at an event with derived causal character."""
    base: Event
    components: np.ndarray
    eps_null: float = EPS_NULL

    def __post_init__(self):
        v = np.array(self.components, dtype=float)
        v.flags.writeable = False
        object.__setattr__(self, "components", v)

    def norm2(self) -> float:
        """g(v, v) at the base event."""
        g = self.base.model.metric_diag_at(self.base.coords)
        v = self.components
        return float(np.dot(g * v, v))

    @property
    def character(self) -> str:
        q = self.norm2()
        tol = self.eps_null * float(self.components @ self.components)
        if q < -tol:
            return "timelike"
        if q > tol:
            return "spacelike"
        return "null"

    @property
    def future(self) -> bool:
        g = self.base.model.metric_diag_at(self.base.coords)
        T = self.base.model.time_orientation(self.base.coords)
        return float(np.dot(g * self.components, T)) < 0


@dataclass(frozen=True)
class KernelSpec:
    base_kind: int
    n_sph: int
    conf_on: int
    conf_c: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    periodic: np.ndarray
    hole_c: np.ndarray
    hole_r: np.ndarray


# -- builders -------------------------------------------------------------

def minkowski(m: int, name: str | None = None) -> SpacetimeModel:
    """Flat R^{m+1} with metric diag(1, ..., 1, -1)."""
    if m < 1:
        raise MalformedSpecError(f"minkowski needs m >= 1, got {m}")
    d = m + 1
    model = SpacetimeModel(
        name=name or f"minkowski({m})",
        kind="minkowski",
        m=m,
        flags=CausalFlags(True, True, True),
        base_kind=KIND_CODE_FLAT,
        n_sph=0,
        holes_c=np.zeros((0, d)),
        holes_r=np.zeros(0),
        lo=np.full(d, -np.inf),
        hi=np.full(d, np.inf),
        periodic=np.zeros(d, dtype=np.uint8),
    )
    model.check_invariants()
    return model


def cylinder(n: int, name: str | None = None) -> SpacetimeModel:
    """S^n x (-pi, pi) with the unit round metric on the sphere factor."""
    if n < 1:
        raise MalformedSpecError(f"cylinder needs n >= 1, got {n}")
    d = n + 1
    lo = np.full(d, -np.inf)
    hi = np.full(d, np.inf)
    periodic = np.zeros(d, dtype=np.uint8)
    lo[-1], hi[-1] = -np.pi, np.pi
    if n == 1:
        periodic[0] = 1
        base_kind, n_sph = KIND_CODE_CYL1, 1
    else:
        # polar angles open (0, pi), azimuth periodic
        for i in range(n - 1):
            lo[i], hi[i] = 0.0, np.pi
        periodic[n - 1] = 1
        base_kind, n_sph = KIND_CODE_CYLN, n
    model = SpacetimeModel(
        name=name or f"cylinder({n})",
        kind="cylinder",
        m=n,
        flags=CausalFlags(True, True, True),
        base_kind=base_kind,
        n_sph=n_sph,
        holes_c=np.zeros((0, d)),
        holes_r=np.zeros(0),
        lo=lo,
        hi=hi,
        periodic=periodic,
    )
    model.check_invariants()
    return model


def apply_conformal(model: SpacetimeModel, factor) -> SpacetimeModel:
    """Multiply the metric by a strictly positive scalar field.

    factor is a LogAffineFactor (kernel-encodable) or any callable on chart
    coordinates. Domain, holes, and causal flags are inherited: conformal
    deformations preserve the causal class.
    """
    if isinstance(factor, LogAffineFactor):
        if len(factor.linear) > model.dim:
            raise MalformedSpecError(
                f"factor has {len(factor.linear)} linear coefficients, model dim is {model.dim}")
        lin = np.zeros(model.dim)
        lin[: len(factor.linear)] = factor.linear
        add = np.concatenate([lin, [factor.const]])
        if model.conf_coeffs is None:
            coeffs = add if model.kernel_ok else None
        else:
            coeffs = model.conf_coeffs + add
        kernel_ok = model.kernel_ok
    else:
        if not callable(factor):
            raise MalformedSpecError("conformal factor must be callable")
        coeffs = None
        kernel_ok = False
    out = SpacetimeModel(
        name=f"conformal({model.name})",
        kind="conformal",
        m=model.m,
        flags=model.flags,
        base=model,
        base_kind=model.base_kind,
        n_sph=model.n_sph,
        factors=model.factors + (factor,),
        conf_coeffs=coeffs,
        kernel_ok=kernel_ok,
        holes_c=model.holes_c,
        holes_r=model.holes_r,
        lo=model.lo,
        hi=model.hi,
        periodic=model.periodic,
        diamond=model.diamond,
    )
    out.check_invariants()
    return out


def excise(model: SpacetimeModel, holes: Sequence) -> SpacetimeModel:
    """Remove point holes (inflated to hit balls of radius eps_hit).

    holes entries are centers or (center, radius) pairs. Causal flags reset
    conservatively: a punctured spacetime is no longer causally simple.
    """
    centers = []
    radii = []
    for h in holes:
        if isinstance(h, (tuple, list)) and len(h) == 2 and np.ndim(h[0]) == 1:
            c, r = h
        else:
            c, r = h, EPS_HIT
        c = np.asarray(c, dtype=float)
        if c.shape != (model.dim,):
            raise DimensionMismatchError(
                f"hole center {c.tolist()} has wrong dimension for {model.name}")
        if not model.contains(c):
            raise HoleOutsideDomainError(f"hole center {c.tolist()} outside domain")
        centers.append(c)
        radii.append(float(r))
    if not centers:
        return model
    out = SpacetimeModel(
        name=f"excised({model.name})",
        kind="excised",
        m=model.m,
        flags=CausalFlags(
            strongly_causal=model.flags.strongly_causal,
            causally_simple=False,
            globally_hyperbolic=False,
        ),
        base=model,
        base_kind=model.base_kind,
        n_sph=model.n_sph,
        factors=model.factors,
        conf_coeffs=model.conf_coeffs,
        kernel_ok=model.kernel_ok,
        holes_c=np.vstack([model.holes_c, np.array(centers)]),
        holes_r=np.concatenate([model.holes_r, np.array(radii)]),
        lo=model.lo,
        hi=model.hi,
        periodic=model.periodic,
        diamond=model.diamond,
    )
    out.check_invariants()
    return out


def diamond(model: SpacetimeModel, past, future, name: str | None = None) -> SpacetimeModel:
    """Open chronological diamond between two vertices of a flat base.

    A causally convex sub-spacetime: relations between its events agree with
    the ambient flat model, which makes it the positive control for
    sub-vs-ambient comparisons.
    """
    if model.base_kind != KIND_CODE_FLAT or model.holes_c.shape[0]:
        raise MalformedSpecError("diamond requires an unexcised flat base")
    a = np.asarray(past, dtype=float)
    b = np.asarray(future, dtype=float)
    if a.shape != (model.dim,) or b.shape != (model.dim,):
        raise DimensionMismatchError("diamond vertices have wrong dimension")
    da = b - a
    if not da[-1] > np.linalg.norm(da[:-1]):
        raise MalformedSpecError("diamond vertices must be chronologically related")
    out = SpacetimeModel(
        name=name or f"diamond({model.name})",
        kind="diamond",
        m=model.m,
        flags=CausalFlags(True, True, True),
        base=model,
        base_kind=model.base_kind,
        n_sph=model.n_sph,
        factors=model.factors,
        conf_coeffs=model.conf_coeffs,
        kernel_ok=model.kernel_ok,
        holes_c=model.holes_c,
        holes_r=model.holes_r,
        lo=model.lo,
        hi=model.hi,
        periodic=model.periodic,
        diamond=(a, b),
    )
    out.check_invariants()
    return out


def build_spacetime(spec: dict) -> SpacetimeModel:
    """Build a model from a descriptor dict (the CLI scenario format)."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise MalformedSpecError("model descriptor must be a dict with a 'kind'")
    kind = spec["kind"]
    if kind == "minkowski":
        if "m" not in spec:
            raise MalformedSpecError("minkowski descriptor needs 'm'")
        return minkowski(int(spec["m"]), name=spec.get("name"))
    if kind == "cylinder":
        if "n" not in spec:
            raise MalformedSpecError("cylinder descriptor needs 'n'")
        return cylinder(int(spec["n"]), name=spec.get("name"))
    if kind == "conformal":
        base = build_spacetime(_need(spec, "base"))
        factor = spec.get("factor")
        if isinstance(factor, dict) and "exp_linear" in factor:
            factor = exp_factor(factor["exp_linear"], float(factor.get("const", 0.0)))
        elif isinstance(factor, (int, float)):
            factor = constant_factor(float(factor))
        elif not (isinstance(factor, LogAffineFactor) or callable(factor)):
            raise MalformedSpecError(f"unsupported conformal factor {factor!r}")
        return apply_conformal(base, factor)
    if kind == "excised":
        base = build_spacetime(_need(spec, "base"))
        holes = []
        for h in spec.get("holes", []):
            if isinstance(h, dict):
                holes.append((h["center"], float(h.get("radius", EPS_HIT))))
            else:
                holes.append(h)
        return excise(base, holes)
    if kind == "diamond":
        base = build_spacetime(_need(spec, "base"))
        return diamond(base, _need(spec, "past"), _need(spec, "future"))
    raise MalformedSpecError(f"unknown model kind {kind!r}")


def contains(model: SpacetimeModel, coords) -> bool:
    """Module-level alias for SpacetimeModel.contains."""
    return model.contains(coords)


def model_descriptor(model: SpacetimeModel) -> dict:
    """Descriptor dict that build_spacetime would accept (for report echo)."""
    if model.kind == "minkowski":
        return {"kind": "minkowski", "m": model.m}
    if model.kind == "cylinder":
        return {"kind": "cylinder", "n": model.m}
    if model.kind == "conformal":
        f = model.factors[-1]
        if isinstance(f, LogAffineFactor):
            fd = {"exp_linear": list(f.linear), "const": f.const}
        else:
            fd = {"callable": getattr(f, "__name__", "factor")}
        return {"kind": "conformal", "base": model_descriptor(model.base), "factor": fd}
    if model.kind == "excised":
        nbase = model.base.holes_c.shape[0]
        return {
            "kind": "excised",
            "base": model_descriptor(model.base),
            "holes": [
                {"center": c.tolist(), "radius": float(r)}
                for c, r in zip(model.holes_c[nbase:], model.holes_r[nbase:])
            ],
        }
    if model.kind == "diamond":
        a, b = model.diamond
        return {
            "kind": "diamond",
            "base": model_descriptor(model.base),
            "past": a.tolist(),
            "future": b.tolist(),
        }
    raise MalformedSpecError(f"cannot describe model kind {model.kind!r}")


def _need(spec: dict, key: str):
    if key not in spec:
        raise MalformedSpecError(f"descriptor for {spec.get('kind')} needs {key!r}")
    return spec[key]


def _r_sequence(count: int, dim: int) -> np.ndarray:
    """Kronecker low-discrepancy sequence in [0, 1)^dim (deterministic)."""
    g = 1.0
    for _ in range(32):
        g = (1.0 + g) ** (1.0 / (dim + 1))
    alpha = (1.0 / g) ** np.arange(1, dim + 1)
    idx = np.arange(1, count + 1)[:, None]
    return np.mod(0.5 + idx * alpha[None, :], 1.0)
