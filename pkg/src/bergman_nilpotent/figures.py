"""Schematic SVG figures: Omega_m in absolute space and the lattice R_m under T_phi."""

from __future__ import annotations

import math

from .lattice import DomainSpec, _spec, member

_W = _H = 480
_MARGIN = 50


def _f(x: float) -> str:
    return f"{x:.2f}"


def _header(title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="serif" font-size="14">',
        f"<title>{title}</title>",
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]


def _axes(to_xy, x_max: float, y_max: float, x_label: str, y_label: str) -> list[str]:
    x0, y0 = to_xy(0, 0)
    x1, _ = to_xy(x_max, 0)
    _, y1 = to_xy(0, y_max)
    return [
        f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}" stroke="black"/>',
        f'<line x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0)}" y2="{_f(y1)}" stroke="black"/>',
        f'<text x="{_f(x1 - 10)}" y="{_f(y0 + 30)}">{x_label}</text>',
        f'<text x="{_f(x0 - 40)}" y="{_f(y1 + 5)}">{y_label}</text>',
    ]


def _polyline(points, to_xy) -> str:
    return " ".join(f"{_f(x)},{_f(y)}" for x, y in (to_xy(a, b) for a, b in points))


def domain_svg(spec: DomainSpec | int, r1_max: float = 8.0, r2_max: float = 8.0, samples: int = 200) -> str:
    """tau(Omega_m) = {(|z1|, |z2|)} with the pieces X, Y_m, Z, clipped at the given extents."""
    spec = _spec(spec)
    m = spec.m
    if r1_max <= math.e or r2_max <= 2:
        raise ValueError("extents must exceed the polydisc (r1 > e, r2 > 2)")
    sx = (_W - 2 * _MARGIN) / r1_max
    sy = (_H - 2 * _MARGIN) / r2_max

    def to_xy(r1, r2):
        return _MARGIN + r1 * sx, _H - _MARGIN - r2 * sy

    out = _header(f"Omega_{m} in absolute space")
    out += _axes(to_xy, r1_max, r2_max, "|z1|", "|z2|")

    zx0, zy0 = to_xy(0, 2)
    out.append(f'<rect id="Z" x="{_f(zx0)}" y="{_f(zy0)}" width="{_f(math.e * sx)}" '
               f'height="{_f(2 * sy)}" fill="#9ecae1" stroke="black"/>')

    # X: under r2 = 1/(r1 log r1) for r1 > e
    xs = [math.e + (r1_max - math.e) * i / samples for i in range(samples + 1)]
    x_curve = [(r1, 1.0 / (r1 * math.log(r1))) for r1 in xs]
    x_poly = [(math.e, 0.0)] + x_curve + [(r1_max, 0.0)]
    out.append(f'<polygon id="X" points="{_polyline(x_poly, to_xy)}" fill="#fdae6b" stroke="none"/>')
    out.append(f'<polyline points="{_polyline(x_curve, to_xy)}" fill="none" stroke="black"/>')

    # Y_m: |r1 - 1/r2| < r2^-m for r2 > 2
    ys = [2.0 + (r2_max - 2.0) * i / samples for i in range(samples + 1)]
    upper = [(1.0 / r2 + r2 ** -m, r2) for r2 in ys]
    lower = [(1.0 / r2 - r2 ** -m, r2) for r2 in ys]
    out.append(f'<polygon id="Y" points="{_polyline(upper + lower[::-1], to_xy)}" '
               f'fill="#a1d99b" stroke="#31a354" stroke-width="1.5"/>')
    out.append(f'<polyline points="{_polyline(upper, to_xy)}" fill="none" stroke="black" stroke-width="0.5"/>')
    out.append(f'<polyline points="{_polyline(lower, to_xy)}" fill="none" stroke="black" stroke-width="0.5"/>')

    lx, ly = to_xy(math.e / 2, 1.0)
    out.append(f'<text x="{_f(lx)}" y="{_f(ly)}" text-anchor="middle">Z</text>')
    lx, ly = to_xy(math.e + 0.6, 0.6)
    out.append(f'<text x="{_f(lx)}" y="{_f(ly)}">X</text>')
    lx, ly = to_xy(0.7, 2.0 + 0.6 * (r2_max - 2.0))
    out.append(f'<text x="{_f(lx)}" y="{_f(ly)}">Y_{m}</text>')
    for r1, label in ((math.e, "e"),):
        tx, ty = to_xy(r1, 0)
        out.append(f'<text x="{_f(tx)}" y="{_f(ty + 16)}" text-anchor="middle">{label}</text>')
    tx, ty = to_xy(0, 2)
    out.append(f'<text x="{_f(tx - 14)}" y="{_f(ty + 5)}">2</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def lattice_svg(spec: DomainSpec | int, n: int | None = None, step: int = 2) -> str:
    """Points of R_m in [0, n]^2 with the a1 -> a1 + step shift drawn as arrows.

    Arrows whose head leaves R_m are dashed.
    """
    spec = _spec(spec)
    m = spec.m
    if n is None:
        n = max(8, spec.max_offset + 2 * step + 2)
    unit = (_W - 2 * _MARGIN) / (n + 1)

    def to_xy(a1, a2):
        return _MARGIN + a1 * unit, _H - _MARGIN - a2 * unit

    out = _header(f"R_{m} and the action of T_phi")
    out.insert(3, '<defs><marker id="head" markerWidth="8" markerHeight="8" refX="7" refY="4" '
                  'orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="black"/></marker></defs>')
    out += _axes(to_xy, n + 0.5, n + 0.5, "a1", "a2")
    for k in range(n + 1):
        x, y0 = to_xy(k, 0)
        out.append(f'<text x="{_f(x)}" y="{_f(y0 + 16)}" text-anchor="middle" font-size="10">{k}</text>')
        x0, y = to_xy(0, k)
        out.append(f'<text x="{_f(x0 - 12)}" y="{_f(y + 4)}" text-anchor="end" font-size="10">{k}</text>')
    for a1 in range(n + 1):
        for a2 in range(n + 1):
            x, y = to_xy(a1, a2)
            if member(spec, (a1, a2)):
                out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="4" fill="black"/>')
            else:
                out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="1.5" fill="#bbbbbb"/>')
    for a1 in range(n + 1):
        for a2 in range(n + 1):
            if not member(spec, (a1, a2)) or a1 + step > n:
                continue
            x0, y0 = to_xy(a1, a2)
            x1, y1 = to_xy(a1 + step, a2)
            # arcs on one row overlap; bow them alternately up and down
            bump = (-0.35 if a1 % 2 == 0 else 0.35) * unit
            inside = member(spec, (a1 + step, a2))
            style = 'stroke="black"' if inside else 'stroke="#d62728" stroke-dasharray="4,3"'
            cls = "stay" if inside else "exit"
            out.append(f'<path class="{cls}" d="M{_f(x0 + 4)},{_f(y0)} Q{_f((x0 + x1) / 2)},'
                       f'{_f(y0 + 2 * bump)} {_f(x1 - 4)},{_f(y1)}" fill="none" {style} '
                       f'marker-end="url(#head)"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
