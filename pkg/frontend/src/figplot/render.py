"""Render the three publication-style figures from sweep CSV files.

The renderer performs no physics: every plotted number comes straight from a
CSV produced by the ``twoatom sweep`` interface.  One curve per z value
(solid, dashed, dotted in ascending z), x on the horizontal axis; fig3 adds
an inset with the traced-state concurrence over the small-x region.
Output is deterministic for a fixed input.
"""

import argparse
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

#: the sweep-file schema this tool consumes (the producing interface contract)
SWEEP_COLUMNS = [
    "z", "x", "re_a", "im_a", "re_b", "im_b", "u2", "v2", "re_l", "im_l",
    "f2", "g2", "re_fg", "im_fg", "conc0", "ent0", "conc1", "ent1",
    "conc2", "ent2", "conc_mix", "mutual_info", "norm_N",
]

FIGURES = {
    "fig1": dict(column="conc0", ylabel="vacuum-sector concurrence",
                 xlim=(0.05, 3.0)),
    "fig2": dict(column="conc1", ylabel="one-photon concurrence",
                 xlim=(0.05, 3.0)),
    "fig3": dict(column="mutual_info", ylabel="mutual information (bits)",
                 xlim=(0.01, 3.0)),
}

LINESTYLES = ["-", "--", ":", "-."]

INSET_RANGE = (0.01, 0.3)


class SchemaError(ValueError):
    """Input file does not match the sweep schema."""


@dataclass(frozen=True)
class FigureSpec:
    figure_id: str
    input_csv: str
    output_path: str
    image_format: str = "png"

    def __post_init__(self):
        if self.figure_id not in FIGURES:
            raise ValueError(f"unknown figure {self.figure_id!r}")
        if self.image_format not in ("png", "svg"):
            raise ValueError(f"format must be png or svg, got {self.image_format}")


def load_sweep(path):
    """Sweep CSV as a dict of named columns; validates the schema."""
    with open(path) as fh:
        header = fh.readline().strip()
    if header.split(",") != SWEEP_COLUMNS:
        raise SchemaError(
            f"{path}: header does not match the sweep schema "
            f"(got {header.split(',')[:4]}...)"
        )
    data = np.genfromtxt(path, delimiter=",", skip_header=1)
    if data.size == 0:
        raise SchemaError(f"{path}: no data rows")
    data = np.atleast_2d(data)
    if data.shape[1] != len(SWEEP_COLUMNS):
        raise SchemaError(f"{path}: wrong column count {data.shape[1]}")
    return {name: data[:, i] for i, name in enumerate(SWEEP_COLUMNS)}


def render(spec: FigureSpec):
    """Write one figure; returns the matplotlib Figure (for inspection)."""
    cols = load_sweep(spec.input_csv)
    info = FIGURES[spec.figure_id]
    zs = np.unique(cols["z"])

    plt.rcParams["svg.hashsalt"] = "figplot"
    fig, ax = plt.subplots(figsize=(6.4, 4.2), dpi=150)
    for i, z in enumerate(zs):
        sel = cols["z"] == z
        order = np.argsort(cols["x"][sel])
        ax.plot(
            cols["x"][sel][order], cols[info["column"]][sel][order],
            LINESTYLES[i % len(LINESTYLES)], color="black", linewidth=1.2,
            label=f"z = {z:g}",
        )
    ax.set_xlim(*info["xlim"])
    ax.set_xlabel("x = L / ct")
    ax.set_ylabel(info["ylabel"])
    ax.legend(frameon=False)

    if spec.figure_id == "fig3":
        inset = ax.inset_axes([0.45, 0.45, 0.5, 0.5])
        for i, z in enumerate(zs):
            sel = (
                (cols["z"] == z)
                & (cols["x"] >= INSET_RANGE[0])
                & (cols["x"] <= INSET_RANGE[1])
            )
            order = np.argsort(cols["x"][sel])
            inset.plot(
                cols["x"][sel][order], cols["conc_mix"][sel][order],
                LINESTYLES[i % len(LINESTYLES)], color="black", linewidth=1.0,
            )
        inset.set_xlim(*INSET_RANGE)
        inset.set_xlabel("x", fontsize=8)
        inset.set_ylabel("traced-state concurrence", fontsize=8)
        inset.tick_params(labelsize=7)

    fig.tight_layout()
    fig.savefig(
        spec.output_path, format=spec.image_format,
        metadata={"Date": None} if spec.image_format == "svg" else None,
    )
    plt.close(fig)
    return fig


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="figplot",
        description="Render fig1/fig2/fig3 images from twoatom sweep CSVs.",
    )
    parser.add_argument("--figure", choices=tuple(FIGURES), required=True)
    parser.add_argument("--input", required=True)
    parser.add_argument("--output", required=True)
    parser.add_argument("--image-format", choices=("png", "svg"), default=None)
    args = parser.parse_args(argv)
    fmt = args.image_format or ("svg" if args.output.endswith(".svg") else "png")
    try:
        render(FigureSpec(args.figure, args.input, args.output, fmt))
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
