"""Render every chart kind to SVG files under demos/output/.

The renderer is deterministic string building: running this twice produces
byte-identical files.
"""

import pathlib

import catseries as cs

out_dir = pathlib.Path(__file__).parent / "output"
out_dir.mkdir(exist_ok=True)

model = cs.MarkovChainModel(
    [[0.7, 0.2, 0.1], [0.1, 0.8, 0.1], [0.2, 0.2, 0.6]], [1 / 3, 1 / 3, 1 / 3]
)
series = cs.generate_mc(model, 600, seed=3)

charts = {
    # step plot of the raw codes; the y-order of nominal categories is an
    # arbitrary coding choice, and the plot says so
    "series.svg": cs.CategoricalSeries(series.codes[:50], series.alphabet),
    # cumulated counts: near-linear curves indicate a stable marginal
    "rate_evolution.svg": cs.rate_evolution(series),
    # how long category 2 takes to return to itself
    "pattern_histogram.svg": cs.cycle_lengths(series, 2)[1],
    # fractal embedding; equal recent strings land in the same disc
    "ifs.svg": cs.ifs_circle_transform(series, alpha=0.17, beta=0.10),
    # lag-by-lag dependence with critical limits
    "dependence_v.svg": cs.dependence_plot_data(series, "cramers_v", 10, 0.05),
    "dependence_kappa.svg": cs.dependence_plot_data(series, "kappa", 10, 0.05),
    # monitoring charts; |T| > 1 alarms are marked in red
    "cycle_chart.svg": cs.cycle_length_chart(series, 1, alpha=0.05),
    "ewma_chart.svg": cs.ewma_marginal_chart(series, lam=0.9, k=3.0),
    "ewma_minmax.svg": cs.ewma_marginal_chart(series, lam=0.9, k=3.0, collapse=True),
    # frequency-domain view
    "envelope.svg": cs.spectral_envelope(series),
}

for name, data in charts.items():
    path = out_dir / name
    path.write_text(cs.render_svg(data))
    print("wrote", path)

# zooming the IFS scatter reads off string frequencies: the window below
# collects points whose recent history is category 1 three times in a row
ifs = cs.ifs_circle_transform(series, alpha=0.17, beta=0.10)
zoom = cs.render_svg(ifs, window=(0.117, 0.120, -0.025, 0.025), title="IFS zoom: '111' region")
(out_dir / "ifs_zoom.svg").write_text(zoom)
print("wrote", out_dir / "ifs_zoom.svg")
print("points in the '111' window:", zoom.count("<circle"))
