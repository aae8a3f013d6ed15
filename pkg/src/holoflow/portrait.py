"""Deterministic SVG phase portraits.

Seeds come from the domain sampling grid; each seed's trajectory is drawn
as a polyline on a fixed 800 x 800 canvas with a fixed color ramp indexed
by seed order. Escaped trajectories are dashed. Discs of radius above 1
additionally get a dashed unit-circle overlay so crossings of |z| = 1 are
visible. Seeds whose integration fails numerically are logged and
skipped. Identical inputs produce identical bytes.
"""

from __future__ import annotations

import logging

from .errors import HoloflowError
from .expr import HoloExpr
from .geometry import DISC, Domain
from .semiflow import integrate

logger = logging.getLogger(__name__)

CANVAS = 800.0

_PALETTE = (
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd",
    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
)


def _viewport(domain: Domain):
    """Map from the complex plane to pixels: returns (fx, fy)."""
    if domain.kind == DISC:
        half = 1.1 * domain.radius
        cx, cy = domain.center.real, domain.center.imag
    else:
        # fixed box matching the sampling lattice
        if domain.kind == "halfplane:upper":
            cx, cy, half = 0.0, 4.0, 4.4
        else:
            cx, cy, half = 4.0, 0.0, 4.4
    scale = CANVAS / (2.0 * half)

    def fx(x: float) -> float:
        return (x - cx + half) * scale

    def fy(y: float) -> float:
        return CANVAS - (y - cy + half) * scale

    return fx, fy


def _circle(fx, fy, center: complex, radius: float, style: str) -> str:
    r_px = radius * (fx(1.0) - fx(0.0))
    return '<circle cx="%.2f" cy="%.2f" r="%.2f" %s/>' % (
        fx(center.real), fy(center.imag), r_px, style)


def render_portrait(G: HoloExpr, domain: Domain, density: int,
                    horizon: float, tol: float) -> tuple[str, dict]:
    """SVG text plus a small summary dict (seed counts by outcome)."""
    seeds = domain.sample_grid(density)
    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" '
        'viewBox="0 0 800 800">',
        '<rect width="800" height="800" fill="#ffffff"/>',
    ]
    fx, fy = _viewport(domain)
    if domain.kind == DISC:
        parts.append(_circle(fx, fy, domain.center, domain.radius,
                             'fill="none" stroke="#000000" stroke-width="1.5"'))
        if domain.radius > 1.0:
            parts.append(_circle(
                fx, fy, 0j, 1.0,
                'fill="none" stroke="#999999" stroke-width="1" '
                'stroke-dasharray="4,4"'))
    else:
        if domain.kind == "halfplane:upper":
            y = fy(0.0)
            parts.append('<line x1="0" y1="%.2f" x2="800" y2="%.2f" '
                         'stroke="#000000" stroke-width="1.5"/>' % (y, y))
        else:
            x = fx(0.0)
            parts.append('<line x1="%.2f" y1="0" x2="%.2f" y2="800" '
                         'stroke="#000000" stroke-width="1.5"/>' % (x, x))
    completed = escaped = failed = 0
    for idx, seed in enumerate(seeds):
        try:
            traj = integrate(G, domain, seed, horizon, tol)
        except HoloflowError as exc:
            failed += 1
            logger.warning("portrait seed %r skipped: %s", seed, exc)
            continue
        if traj.escaped:
            escaped += 1
            dash = ' stroke-dasharray="6,4"'
        else:
            completed += 1
            dash = ""
        coords = " ".join(
            "%.2f,%.2f" % (fx(p.real), fy(p.imag)) for p in traj.points)
        parts.append(
            '<polyline points="%s" fill="none" stroke="%s" '
            'stroke-width="1"%s/>'
            % (coords, _PALETTE[idx % len(_PALETTE)], dash))
    parts.append("</svg>")
    summary = {"seeds": len(seeds), "completed": completed,
               "escaped": escaped, "failed": failed}
    return "\n".join(parts) + "\n", summary
