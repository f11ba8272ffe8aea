"""The invariant checks of the geometry, Jacobi and BVP layers."""

from functools import partial
from typing import Optional

import numpy as np

from ..analysis import bvp, jacobi
from ..analysis.jacobi import AnalyticField, FieldName, SeriesKind
from ..config import Tolerances
from ..geometry import catenoid, curvature, hyperbolic, jets, parabolic, tall
from ..models.entities import Gauge, Model, ParabolicParam, Point3, Side
from ..models.errors import ZeroModeError
from ..models.fields import BoundaryData, SourceData, StripField
from ..models.jobs import Suite
from .engine import Check, Measurement

SAMPLES = 200
CATENOID_KS = (0.25, 1.0, 4.0)
PARABOLIC_LAMBDAS = (0.5, 1.0, 2.0)
TALL_DS = (0.3, 0.7)
HEIGHT_KS = tuple(np.geomspace(1e-4, 1e3, 12))


def _random_disk(rng: np.random.Generator, n: int, radius: float) -> np.ndarray:
    r = radius * np.sqrt(rng.uniform(0.0, 1.0, n))
    a = rng.uniform(0.0, 2.0 * np.pi, n)
    return r * np.exp(1j * a)


def mobius_roundtrip(rng, tol: Tolerances) -> Measurement:
    zs = _random_disk(rng, 50, 0.95)
    err = max(abs(hyperbolic.mobius_g_inverse(hyperbolic.mobius_g(z)) - z) for z in zs)
    return Measurement(err, 1e-12)


def metric_compatibility(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for z in _random_disk(rng, 20, 0.8):
        p = Point3(z.real, z.imag, 0.0)
        scale = hyperbolic.metric_at(p, Model.DISK).g[0, 0]
        worst = max(worst, hyperbolic.compatibility_residual(p, Model.DISK) / scale)
    for x, y in zip(rng.uniform(-2, 2, 20), rng.uniform(0.1, 2, 20)):
        p = Point3(x, y, 0.0)
        scale = hyperbolic.metric_at(p, Model.HALF_PLANE).g[0, 0]
        worst = max(worst, hyperbolic.compatibility_residual(p, Model.HALF_PLANE) / scale)
    return Measurement(worst, 1e-12)


def catenoid_first_integral(rng, tol: Tolerances) -> Measurement:
    drifts = {
        k: catenoid.integrate_profile(k, t_max=10.0 * catenoid.profile_period(k, tol), tol=tol).first_integral_drift
        for k in CATENOID_KS
    }
    return Measurement(max(drifts.values()), tol.first_integral, {"drift": drifts, "periods": 10})


def catenoid_period(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for k in CATENOID_KS:
        profile = catenoid.integrate_profile(k, t_max=1.2 * catenoid.profile_period(k, tol), tol=tol)
        r_at_minimum, _ = profile.raw(profile.minima[0])
        worst = max(worst, abs(r_at_minimum - profile.r0))
    return Measurement(worst, 1e-7)


def catenoid_height(rng, tol: Tolerances) -> Measurement:
    # negative exactly when every height condition holds with margin
    hs = np.array([catenoid.height(k, tol) for k in HEIGHT_KS])
    value = max(
        float(np.max(np.diff(hs))),
        float(np.max(hs)) - np.pi,
        np.pi - 0.02 - float(hs[0]),
        float(hs[-1]) - 0.4,
    )
    return Measurement(value, -1e-12, {"heights": dict(zip((f"{k:.3g}" for k in HEIGHT_KS), hs.tolist()))})


def catenoid_minimality(rng, tol: Tolerances) -> Measurement:
    worst, conformal = 0.0, 0.0
    for k in CATENOID_KS:
        patch = catenoid.catenoid_patch(k)
        h = catenoid.height(k, tol)
        samples = np.column_stack([
            rng.uniform(0.0, 2.0 * np.pi, SAMPLES), rng.uniform(-0.45 * h, 0.45 * h, SAMPLES)
        ])
        worst = max(worst, curvature.max_mean_curvature(patch, samples, tol))
        conformal = max(conformal, max(curvature.conformality_defect(patch, u, v, tol) for u, v in samples[:10]))
    return Measurement(worst, tol.minimality, {"max_H": worst, "conformality_defect": conformal, "samples": SAMPLES})


def catenoid_derivative(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for x, y in ((0.0, 0.5), (0.3, 0.5), (0.5, 0.3), (-0.4, 0.6), (0.2, 0.8)):
        exact = jacobi.second_order_closed_form(SeriesKind.CAT, x, y)
        approx = catenoid.phi_k_derivative(x, y, tol=tol)
        worst = max(worst, abs(approx - exact) / abs(exact))
    return Measurement(worst, 1e-3)


def parabolic_minimality(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for lam in PARABOLIC_LAMBDAS:
        for gauge in Gauge:
            param = ParabolicParam(lam, gauge)
            lo, hi = param.t_range
            xs, ts = rng.uniform(-3.0, 3.0, SAMPLES), rng.uniform(lo + 0.1, hi - 0.1, SAMPLES)
            patch = parabolic.parabolic_patch(param)
            worst = max(worst, curvature.max_mean_curvature(patch, np.column_stack([xs, ts]), tol))
    xs, ys = rng.uniform(-3.0, 3.0, SAMPLES), rng.uniform(0.05, 0.95, SAMPLES)
    worst = max(worst, curvature.max_mean_curvature(parabolic.graph_patch(), np.column_stack([xs, ys]), tol))
    return Measurement(worst, tol.minimality, {"max_H": worst, "samples": SAMPLES})


def parabolic_identities(rng, tol: Tolerances) -> Measurement:
    patch = parabolic.psi_patch()
    worst = 0.0
    for x, t in zip(rng.uniform(-3, 3, 100), rng.uniform(0.2, np.pi - 0.2, 100)):
        r = curvature.fundamental_forms(patch, x, t, tol)
        s2 = np.sin(t) ** 2
        worst = max(
            worst,
            abs(r.E * s2 - 1.0), abs(r.G * s2 - 1.0), abs(r.F),
            abs(r.A2 - 2.0 * s2), abs(r.ric_nu + s2),
            float(np.max(np.abs(r.nu - parabolic.gauss_map_psi(t)))),
        )
    return Measurement(worst, tol.second_form)


def q_surface(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for x in np.linspace(-2.0, 2.0, 20):
        for t in np.linspace(-1.5, 1.5, 20):
            worst = max(worst, abs(parabolic.q_residual(parabolic.fhat_in_disk(x, t))))
    return Measurement(worst, 1e-12)


def tall_elliptic(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for d in np.linspace(0.1, 0.9, 10):
        a = tall.d1(d)
        for frac in np.linspace(0.0, 1.0, 10):
            x = a + frac * (1.0 - a)
            worst = max(worst, abs(tall.lambda_quadrature(d, x, tol) - tall.lambda_elliptic(d, x)))
    return Measurement(worst, tol.elliptic)


def tall_height(rng, tol: Tolerances) -> Measurement:
    ds = np.linspace(0.1, 0.9, 9)
    hs = np.array([tall.height_tall(d, tol) for d in ds])
    value = max(-float(np.min(np.diff(hs))), np.pi - float(np.min(hs)))
    return Measurement(value, -1e-12, {"heights": dict(zip(map(str, ds.round(2)), hs.tolist()))})


def tall_minimality(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for d in TALL_DS:
        a = tall.d1(d)
        xs = a + (1.0 - a) * rng.uniform(0.05, 0.95, SAMPLES)
        ys = rng.uniform(-0.9, 0.9, SAMPLES)
        worst = max(worst, curvature.max_mean_curvature(tall.upsilon_patch(d), np.column_stack([xs, ys]), tol))
    return Measurement(worst, tol.minimality, {"max_H": worst, "samples": SAMPLES})


def tall_regeneration(rng, tol: Tolerances) -> Measurement:
    d = 1e-3
    worst = tall.regeneration_error(d, rng.uniform(0.05, 0.95, 50), rng.uniform(-3.0, 3.0, 50), tol)
    return Measurement(worst, 0.05, {"d": d})


def analytic_fields(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    xs = rng.uniform(-3.0, 3.0, 100)
    for name in FieldName:
        for gauge in Gauge:
            field = AnalyticField(name, gauge)
            offset = 0.0 if gauge == Gauge.PSI else -0.5 * np.pi
            ts = rng.uniform(0.05, np.pi - 0.05, 100) + offset
            worst = max(worst, max(abs(jacobi.jacobi_apply(field, x, t)) for x, t in zip(xs, ts)))
    return Measurement(worst, tol.jacobi)


def gauge_consistency(rng, tol: Tolerances) -> Measurement:
    xs, ts = rng.uniform(-3, 3, 100), rng.uniform(0.05, np.pi - 0.05, 100)
    w_psi = AnalyticField(FieldName.W_CAT, Gauge.PSI).value(xs, ts)
    w_fhat = AnalyticField(FieldName.W_CAT, Gauge.FHAT).value(xs, ts - 0.5 * np.pi)
    return Measurement(float(np.max(np.abs(w_psi - w_fhat))), 1e-13)


def series_integrals(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    x = 0.7
    for y in np.linspace(0.1, 0.9, 9):
        for kind in SeriesKind:
            for order in (0, 1, 2):
                quad = jacobi.series_integral(kind, order, x, y, tol)
                worst = max(worst, abs(quad - jacobi.series_closed_form(kind, order, x, y)))
    return Measurement(worst, 1e-8)


def normal_component(rng, tol: Tolerances) -> Measurement:
    field = jacobi.jacobi_field_from_normal(
        lambda x, t: np.array([x, np.sin(t), 0.0]), parabolic.psi_patch(), tol
    )
    xs, ts = rng.uniform(-3, 3, 30), rng.uniform(0.1, np.pi - 0.1, 30)
    return Measurement(max(abs(field(x, t) - np.sin(t)) for x, t in zip(xs, ts)), 1e-12)


def rayleigh_nonnegative(rng, tol: Tolerances) -> Measurement:
    lowest = np.inf
    for _ in range(5):
        centers, widths = rng.uniform(-3, 3, 3), rng.uniform(0.5, 1.5, 3)
        amps, modes = rng.normal(size=3), rng.integers(1, 4, 3)

        def test_field(x, t):
            return sum(
                a * np.exp(-((x - c) / w) ** 2) * np.sin(n * t)
                for a, c, w, n in zip(amps, centers, widths, modes)
            )

        lowest = min(lowest, jacobi.rayleigh_quotient(StripField.from_function(12.0, 128, 65, test_field)))
    return Measurement(max(0.0, -lowest), 1e-10, {"lowest_quotient": lowest})


def l2_growth(rng, tol: Tolerances) -> Measurement:
    psi = AnalyticField(FieldName.PSI)
    norms = [jacobi.truncated_l2_norm(psi, c) for c in (1.0, 2.0, 4.0)]
    return Measurement(max(abs(norms[1] / norms[0] - 2.0), abs(norms[2] / norms[1] - 2.0)), 1e-10, {"norms": norms})


def multiplier_boundary(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for xi in (0.5, 1.0, 2.0):
        worst = max(worst, abs(bvp.multiplier_v(xi, 0.0)), abs(bvp.multiplier_v(xi, np.pi) - 1.0))
        worst = max(worst, abs(bvp.multiplier_v(xi, np.pi, Side.MINUS)), abs(bvp.multiplier_v(xi, 0.0, Side.MINUS) - 1.0))
    ts = np.linspace(0.0, np.pi, 11)
    worst = max(worst, float(np.max(np.abs(bvp.multiplier_v(1.0, ts) - ts / np.pi))))
    return Measurement(worst, 1e-12)


def multiplier_continuity(rng, tol: Tolerances) -> Measurement:
    ts = np.linspace(0.0, np.pi, 33)
    worst = 0.0
    for s in (1e-7, -1e-7):
        xi = np.sqrt(1.0 - s)
        gap = np.abs(bvp.closed_form_v(xi, ts) - bvp.near_resonance_series(xi, ts))
        worst = max(worst, float(np.max(gap)))
    return Measurement(worst, 1e-8)


def multiplier_ode(rng, tol: Tolerances) -> Measurement:
    worst = 0.0
    for xi, t in zip(rng.uniform(0.1, 3.0, 50), rng.uniform(0.05, np.pi - 0.05, 50)):
        for side in Side:
            jt, _ = jets.variables(t, 0.0)
            v = bvp.multiplier_v(xi, jt, side)
            scale = max(1.0, abs(v.value), abs(v.hess[0, 0]))
            worst = max(worst, abs(-v.hess[0, 0] + (xi * xi - 1.0) * v.value) / scale)
    return Measurement(worst, 1e-10)


def dirichlet_vs_fd(rng, tol: Tolerances) -> Measurement:
    bd = bvp.boundary_preset("hat", 20.0, 1024)
    spectral = bvp.solve_dirichlet(bd, 256, tol)
    direct = bvp.solve_dirichlet_fd(bd, 256)
    i, j = bd.nx // 2, 256 // 2
    rel = abs(spectral.values[i, j] - direct.values[i, j]) / abs(direct.values[i, j])
    return Measurement(rel, 1e-3, {"spectral": spectral.values[i, j], "direct": direct.values[i, j]})


def dirichlet_moment(rng, tol: Tolerances) -> Measurement:
    report = bvp.moment_check_pipeline(bvp.boundary_preset("hat_pair", 20.0, 512), nt=129, tol=tol)
    return Measurement(abs(report.residuals[-1].value), tol.moment, report.to_dict())


def _mirrored(values: np.ndarray) -> np.ndarray:
    """Values at -x on the periodic grid, where x_{nx-j} = -x_j."""
    return np.roll(values[::-1], 1, axis=0)


def dirichlet_traces(rng, tol: Tolerances) -> Measurement:
    u = bvp.solve_dirichlet(bvp.boundary_preset("hat_pair", 20.0, 1024), 129, tol)
    integrals = [abs(float(np.sum(trace)) * u.dx) for trace in (u.trace_plus, u.trace_minus)]
    near = np.abs(u.x) <= 5.0
    gap = float(np.min(np.abs(u.trace_plus[near] - u.trace_minus[near])))
    even = float(np.max(np.abs(u.values - _mirrored(u.values))))
    odd_field = bvp.solve_dirichlet(bvp.boundary_preset("odd", 20.0, 1024), 129, tol).values
    odd = float(np.max(np.abs(odd_field + _mirrored(odd_field))))
    value = max(*integrals, even, odd) if gap > 0 else np.inf
    return Measurement(value, 1e-8, {"trace_integrals": integrals, "min_trace_gap": gap, "parity": max(even, odd)})


def dirichlet_refinement(rng, tol: Tolerances) -> Measurement:
    ratio = bvp.dirichlet_refinement_ratio(bvp.hat, partial(bvp.hat, width=2.0), 16.0, 256, 65, tol)
    return Measurement(abs(ratio - 4.0), 0.5, {"ratio": ratio})


def zero_mode_rejection(rng, tol: Tolerances) -> Measurement:
    try:
        bvp.solve_dirichlet(bvp.boundary_preset("gaussian_derivative", 20.0, 256), 65, tol)
    except ZeroModeError as exc:
        return Measurement(0.0, 0.0, {"rejected": exc.to_dict()})
    return Measurement(1.0, 0.0, {"rejected": False})


def manufactured(rng, tol: Tolerances) -> Measurement:
    errors = []
    for nt in (129, 257):
        src = SourceData.from_function(20.0, 256, nt, bvp.manufactured_source)
        u = bvp.solve_inhomogeneous(src, tol)
        exact = StripField.from_function(20.0, 256, nt, bvp.manufactured_solution)
        errors.append(float(np.max(np.abs(u.values - exact.values)) / np.max(np.abs(exact.values))))
    return Measurement(errors[-1], 1e-3, {"errors": errors, "ratio": errors[0] / errors[1]})


_CHECKS = (
    ("hyperbolic.mobius_roundtrip", Suite.GEOMETRY, mobius_roundtrip),
    ("hyperbolic.metric_compatibility", Suite.GEOMETRY, metric_compatibility),
    ("catenoid.first_integral", Suite.GEOMETRY, catenoid_first_integral),
    ("catenoid.period", Suite.GEOMETRY, catenoid_period),
    ("catenoid.height", Suite.GEOMETRY, catenoid_height),
    ("catenoid.minimality", Suite.GEOMETRY, catenoid_minimality),
    ("catenoid.k_derivative", Suite.GEOMETRY, catenoid_derivative),
    ("parabolic.minimality", Suite.GEOMETRY, parabolic_minimality),
    ("parabolic.identities", Suite.GEOMETRY, parabolic_identities),
    ("parabolic.q_surface", Suite.GEOMETRY, q_surface),
    ("tall.elliptic", Suite.GEOMETRY, tall_elliptic),
    ("tall.height", Suite.GEOMETRY, tall_height),
    ("tall.minimality", Suite.GEOMETRY, tall_minimality),
    ("tall.regeneration", Suite.GEOMETRY, tall_regeneration),
    ("jacobi.analytic_fields", Suite.JACOBI, analytic_fields),
    ("jacobi.gauge_consistency", Suite.JACOBI, gauge_consistency),
    ("jacobi.series_integrals", Suite.JACOBI, series_integrals),
    ("jacobi.normal_component", Suite.JACOBI, normal_component),
    ("jacobi.rayleigh", Suite.JACOBI, rayleigh_nonnegative),
    ("jacobi.l2_growth", Suite.JACOBI, l2_growth),
    ("bvp.multiplier_boundary", Suite.BVP, multiplier_boundary),
    ("bvp.multiplier_continuity", Suite.BVP, multiplier_continuity),
    ("bvp.multiplier_ode", Suite.BVP, multiplier_ode),
    ("bvp.dirichlet_vs_fd", Suite.BVP, dirichlet_vs_fd),
    ("bvp.traces", Suite.BVP, dirichlet_traces),
    ("bvp.moment", Suite.BVP, dirichlet_moment),
    ("bvp.refinement", Suite.BVP, dirichlet_refinement),
    ("bvp.zero_mode", Suite.BVP, zero_mode_rejection),
    ("bvp.manufactured", Suite.BVP, manufactured),
)


def build_checks(tol: Optional[Tolerances] = None) -> list[Check]:
    tol = tol or Tolerances()
    return [Check(name, suite, partial(func, tol=tol)) for name, suite, func in _CHECKS]
