"""Deterministic SVG rendering of the chart data structures.

Pure string building: no clock, no ids, no randomness, fixed float
formatting, so the same input always yields byte-identical output.  Fixed
800x500 viewBox, embedded CSS, no external fonts.
"""

from __future__ import annotations

import numpy as np

from .graphics import ControlChart, DependenceTable, FractalSeries, PatternHistogram, RateEvolution
from .series import CategoricalSeries
from .spectral import SpectralEnvelope

__all__ = ["render_svg"]

WIDTH, HEIGHT = 800, 500
MARGIN = {"left": 64.0, "right": 20.0, "top": 40.0, "bottom": 48.0}

_PALETTE = ("#1f6fb4", "#d9541e", "#2e8b57", "#8444b4", "#b4a21e", "#16a3a3", "#b41e5a", "#555555")

_CSS = (
    "text{font-family:monospace;font-size:12px;fill:#222}"
    ".title{font-size:14px}"
    ".caveat{font-size:11px;fill:#884400}"
    ".axis{stroke:#222;stroke-width:1;fill:none}"
    ".grid{stroke:#cccccc;stroke-width:0.5}"
    ".limit{stroke:#aa2222;stroke-width:1;stroke-dasharray:6 4;fill:none}"
    ".alarm{fill:#cc1111}"
)


def _num(x: float) -> str:
    return f"{float(x):.2f}"


def _label(x: float) -> str:
    return f"{float(x):.5g}"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def _el(tag: str, content: str | None = None, **attrs) -> str:
    parts = "".join(f' {k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    if content is None:
        return f"<{tag}{parts}/>"
    return f"<{tag}{parts}>{content}</{tag}>"


class _Frame:
    """Maps data coordinates into the fixed plot rectangle."""

    def __init__(self, x0, x1, y0, y1):
        if x1 <= x0:
            x0, x1 = x0 - 0.5, x0 + 0.5
        if y1 <= y0:
            y0, y1 = y0 - 0.5, y0 + 0.5
        self.x0, self.x1, self.y0, self.y1 = float(x0), float(x1), float(y0), float(y1)
        self.px0 = MARGIN["left"]
        self.px1 = WIDTH - MARGIN["right"]
        self.py0 = HEIGHT - MARGIN["bottom"]
        self.py1 = MARGIN["top"]

    def x(self, v) -> float:
        return self.px0 + (float(v) - self.x0) / (self.x1 - self.x0) * (self.px1 - self.px0)

    def y(self, v) -> float:
        return self.py0 + (float(v) - self.y0) / (self.y1 - self.y0) * (self.py1 - self.py0)

    def axes(self, xlab: str, ylab: str, yticks=None, xticks=None) -> list[str]:
        out = [
            _el("rect", x=_num(self.px0), y=_num(self.py1), width=_num(self.px1 - self.px0),
                height=_num(self.py0 - self.py1), **{"class": "axis"}),
        ]
        if xticks is None:
            xticks = np.linspace(self.x0, self.x1, 5)
        if yticks is None:
            yticks = np.linspace(self.y0, self.y1, 5)
        for t in xticks:
            px = self.x(t)
            out.append(_el("line", x1=_num(px), y1=_num(self.py0), x2=_num(px), y2=_num(self.py0 + 4), **{"class": "axis"}))
            out.append(_el("text", _label(t), x=_num(px), y=_num(self.py0 + 16), text_anchor="middle"))
        for t in yticks:
            py = self.y(t)
            out.append(_el("line", x1=_num(self.px0 - 4), y1=_num(py), x2=_num(self.px0), y2=_num(py), **{"class": "axis"}))
            out.append(_el("text", _label(t), x=_num(self.px0 - 8), y=_num(py + 4), text_anchor="end"))
        out.append(_el("text", _esc(xlab), x=_num((self.px0 + self.px1) / 2), y=_num(HEIGHT - 8), text_anchor="middle"))
        out.append(_el("text", _esc(ylab), x=_num(14.0), y=_num((self.py0 + self.py1) / 2),
                       transform=f"rotate(-90 {_num(14.0)} {_num((self.py0 + self.py1) / 2)})", text_anchor="middle"))
        return out

    def hline(self, v, cls="limit") -> str:
        return _el("line", x1=_num(self.px0), y1=_num(self.y(v)), x2=_num(self.px1), y2=_num(self.y(v)), **{"class": cls})

    def polyline(self, xs, ys, color) -> str:
        pts = " ".join(f"{_num(self.x(a))},{_num(self.y(b))}" for a, b in zip(xs, ys))
        return _el("polyline", points=pts, fill="none", stroke=color, stroke_width="1.5")


def _document(body: list[str], title: str) -> str:
    head = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" version="1.1">',
        _el("style", _CSS),
        _el("rect", x="0", y="0", width=str(WIDTH), height=str(HEIGHT), fill="#ffffff"),
        _el("text", _esc(title), x=_num(WIDTH / 2), y=_num(22.0), text_anchor="middle", **{"class": "title"}),
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"


def _legend(frame: _Frame, labels) -> list[str]:
    out = []
    x = frame.px1 - 110.0
    for i, lab in enumerate(labels):
        y = frame.py1 + 14.0 + 16.0 * i
        color = _PALETTE[i % len(_PALETTE)]
        out.append(_el("rect", x=_num(x), y=_num(y - 9), width="10", height="10", fill=color))
        out.append(_el("text", _esc(str(lab)), x=_num(x + 16), y=_num(y), text_anchor="start"))
    return out


def _series_plot(series: CategoricalSeries, title) -> str:
    codes = series.codes
    T = codes.size
    frame = _Frame(1, T + 1, 0.5, series.alphabet.size + 0.5)
    body = frame.axes("t", "category", yticks=np.arange(1, series.alphabet.size + 1))
    # step plot: horizontal run at each code with vertical connectors
    xs, ys = [], []
    for t, c in enumerate(codes, start=1):
        xs.extend([t, t + 1])
        ys.extend([c, c])
    body.append(frame.polyline(xs, ys, _PALETTE[0]))
    for i, lab in enumerate(series.alphabet.symbols, start=1):
        body.append(_el("text", _esc(lab), x=_num(frame.px1 + 4), y=_num(frame.y(i) + 4), text_anchor="start"))
    body.append(_el("text", "note: categories are nominal; the vertical order is an arbitrary coding",
                    x=_num(frame.px0), y=_num(HEIGHT - 26), text_anchor="start", **{"class": "caveat"}))
    return _document(body, title or "categorical series")


def _rate_plot(data: RateEvolution, title) -> str:
    T, r = data.counts.shape
    frame = _Frame(1, T, 0, data.counts.max())
    body = frame.axes("t", "cumulated count")
    ts = np.arange(1, T + 1)
    for i in range(r):
        body.append(frame.polyline(ts, data.counts[:, i], _PALETTE[i % len(_PALETTE)]))
    body.extend(_legend(frame, data.labels))
    return _document(body, title or "rate evolution")


def _pattern_plot(data: PatternHistogram, title) -> str:
    if not data.counts:
        raise ValueError("empty data: category closes no cycle")
    lengths = sorted(data.counts)
    top = max(data.counts.values())
    frame = _Frame(min(lengths) - 0.5, max(lengths) + 0.5, 0, top)
    body = frame.axes("cycle length", "count", xticks=lengths if len(lengths) <= 12 else None)
    for length in lengths:
        cnt = data.counts[length]
        x_left = frame.x(length - 0.4)
        width = frame.x(length + 0.4) - x_left
        y_top = frame.y(cnt)
        body.append(_el("rect", x=_num(x_left), y=_num(y_top), width=_num(width),
                        height=_num(frame.py0 - y_top), fill=_PALETTE[0], stroke="#ffffff"))
    return _document(body, title or f"cycle lengths of category {data.label}")


def _ifs_plot(data: FractalSeries, title, window=None) -> str:
    pts = data.points
    if window is not None:
        x0, x1, y0, y1 = window
        keep = (pts[:, 0] >= x0) & (pts[:, 0] <= x1) & (pts[:, 1] >= y0) & (pts[:, 1] <= y1)
        pts = pts[keep]
    else:
        lim = data.beta / (1.0 - data.alpha)
        x0, x1, y0, y1 = -lim, lim, -lim, lim
    frame = _Frame(x0, x1, y0, y1)
    body = frame.axes("x", "y")
    for p in pts:
        body.append(_el("circle", cx=_num(frame.x(p[0])), cy=_num(frame.y(p[1])), r="1.6",
                        fill=_PALETTE[0], fill_opacity="0.7"))
    note = f"alpha={_label(data.alpha)} beta={_label(data.beta)} points={pts.shape[0]}"
    body.append(_el("text", _esc(note), x=_num(frame.px0), y=_num(HEIGHT - 26), text_anchor="start"))
    return _document(body, title or "IFS circle transformation")


def _dependence_plot(data: DependenceTable, title) -> str:
    lo = data.lower if data.lower is not None else 0.0
    ymin = min(0.0, float(data.estimates.min()), lo) - 0.05
    ymax = max(float(data.estimates.max()), data.upper, 0.0) + 0.05
    frame = _Frame(0, int(data.lags.max()) + 1, ymin, ymax)
    body = frame.axes("lag", "estimate", xticks=data.lags)
    body.append(frame.hline(0.0, cls="grid"))
    body.append(frame.hline(data.upper))
    if data.lower is not None:
        body.append(frame.hline(data.lower))
    for lag, est in zip(data.lags, data.estimates):
        px = frame.x(lag)
        body.append(_el("line", x1=_num(px), y1=_num(frame.y(0.0)), x2=_num(px), y2=_num(frame.y(est)),
                        stroke=_PALETTE[0], stroke_width="2"))
        body.append(_el("circle", cx=_num(px), cy=_num(frame.y(est)), r="3", fill=_PALETTE[0]))
    return _document(body, title or f"serial dependence ({data.family})")


def _control_plot(chart: ControlChart, title) -> str:
    stats = chart.statistics if chart.statistics.ndim == 2 else chart.statistics[:, None]
    ymin = min(-1.3, float(stats.min()) - 0.1)
    ymax = max(1.3, float(stats.max()) + 0.1)
    frame = _Frame(float(chart.times.min()), float(chart.times.max()), ymin, ymax)
    body = frame.axes("t", "standardized statistic")
    body.append(frame.hline(0.0, cls="grid"))
    body.append(frame.hline(1.0))
    body.append(frame.hline(-1.0))
    alarms = chart.alarms if chart.alarms.ndim == 2 else chart.alarms[:, None]
    for i in range(stats.shape[1]):
        color = _PALETTE[i % len(_PALETTE)]
        body.append(frame.polyline(chart.times, stats[:, i], color))
        for t, v in zip(chart.times[alarms[:, i]], stats[:, i][alarms[:, i]]):
            body.append(_el("circle", cx=_num(frame.x(t)), cy=_num(frame.y(v)), r="3.5", **{"class": "alarm"}))
    if stats.shape[1] > 1:
        body.extend(_legend(frame, chart.labels))
    return _document(body, title or f"control chart ({chart.kind})")


def _envelope_plot(data: SpectralEnvelope, title) -> str:
    frame = _Frame(0.0, 0.5, 0.0, float(data.envelope.max()) * 1.05)
    body = frame.axes("frequency", "envelope")
    body.append(frame.polyline(data.frequencies, data.envelope, _PALETTE[0]))
    peak = int(np.argmax(data.envelope))
    body.append(_el("circle", cx=_num(frame.x(data.frequencies[peak])), cy=_num(frame.y(data.envelope[peak])),
                    r="3.5", fill=_PALETTE[1]))
    note = f"peak at frequency {_label(data.frequencies[peak])} (window {data.window})"
    body.append(_el("text", _esc(note), x=_num(frame.px0), y=_num(HEIGHT - 26), text_anchor="start"))
    return _document(body, title or "spectral envelope")


def render_svg(data, *, title: str | None = None, window=None) -> str:
    """Render any chart-data object to an SVG 1.1 document string.

    ``window`` (x0, x1, y0, y1) restricts an IFS scatter to a coordinate
    window, which is how string frequencies are read off by zooming.
    """
    if isinstance(data, CategoricalSeries):
        if len(data) == 0:
            raise ValueError("empty data")
        return _series_plot(data, title)
    if isinstance(data, RateEvolution):
        return _rate_plot(data, title)
    if isinstance(data, PatternHistogram):
        return _pattern_plot(data, title)
    if isinstance(data, FractalSeries):
        return _ifs_plot(data, title, window)
    if isinstance(data, DependenceTable):
        return _dependence_plot(data, title)
    if isinstance(data, ControlChart):
        return _control_plot(data, title)
    if isinstance(data, SpectralEnvelope):
        return _envelope_plot(data, title)
    raise ValueError(f"no renderer for {type(data).__name__}")
