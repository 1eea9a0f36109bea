"""Figure-reproduction manifests.

One JSON manifest per reference figure (fig1..fig8) lives under
ncqo/figures/. Scan panels become standard scan CSVs; photon-distribution
panels emit a dedicated CSV with one row per Fock index. Mesh resolution
is a free choice (manifests default to 60x60); reruns are byte-identical,
which is what the tests certify.
"""

from __future__ import annotations

import importlib.resources
import json
import os

from .errors import ConfigError
from .observables import photon_distribution
from .scan import GridSpec, Quantity, ScanSpec, emit, run_scan
from .states import StateFamily, StateKind, build_state
from .beamsplitter import SplitterParams

FIGURE_NAMES = tuple(f"fig{i}" for i in range(1, 9))


def load_manifest(name: str) -> dict:
    if name not in FIGURE_NAMES:
        raise ConfigError(f"unknown figure {name!r}; choose one of {', '.join(FIGURE_NAMES)}")
    ref = importlib.resources.files("ncqo") / "figures" / f"{name}.json"
    return json.loads(ref.read_text())


def panel_to_spec(panel: dict) -> ScanSpec:
    re_min, re_max, re_steps = panel["re"]
    im_min, im_max, im_steps = panel["im"]
    return ScanSpec(
        quantity=Quantity(panel["quantity"]),
        family=StateFamily(panel["kind"]),
        grid=GridSpec(re_min, re_max, int(re_steps), im_min, im_max, int(im_steps)),
        tau_list=tuple(panel["tau"]),
        splitter=SplitterParams(panel.get("theta", 1.5707963267948966), panel.get("phi", 0.0)),
        cutoff=panel.get("cutoff"),
        exact=bool(panel.get("exact", False)),
    )


def _emit_photon_panel(panel: dict, path: str) -> None:
    alpha = complex(panel["alpha"][0], panel["alpha"][1])
    tau = float(panel["tau"])
    n_max = int(panel["n_max"])
    exact = bool(panel.get("exact", False))
    dists = {}
    for kind_name in panel["kinds"]:
        kind = StateKind(StateFamily(kind_name), alpha, tau)
        state = build_state(kind, exact=exact)
        dists[kind_name] = photon_distribution(state)
    header = "n," + ",".join(f"p_{k.replace('-', '_')}" for k in panel["kinds"])
    lines = [header]
    for n in range(n_max + 1):
        vals = [
            f"{(dists[k][n] if n < dists[k].size else 0.0):.17g}" for k in panel["kinds"]
        ]
        lines.append(f"{n}," + ",".join(vals))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def run_figure(name: str, outdir: str) -> list[str]:
    """Run every panel of a figure manifest; returns the written paths."""
    manifest = load_manifest(name)
    os.makedirs(outdir, exist_ok=True)
    written = []
    for panel in manifest["panels"]:
        path = os.path.join(outdir, f"{name}_{panel['name']}.csv")
        if panel["type"] == "photon_distribution":
            _emit_photon_panel(panel, path)
        else:
            emit(run_scan(panel_to_spec(panel)), "csv", path)
        written.append(path)
    return written
