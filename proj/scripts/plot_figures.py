#!/usr/bin/env python3
# Copyright 2026 The qdarwin Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Static plots of qdarwin CSV output. Developer tooling only.

Usage: plot_figures.py KIND CSV [CSV ...] --out PNG
KIND is one of mesh, qcb, holevo, gaussian, band.
"""

import argparse
import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
import pandas as pd  # noqa: E402


def read_table(path):
    meta = {}
    body = []
    with open(path) as fh:
        for line in fh:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(": ")
                meta[key] = value
            else:
                body.append(line)
    return pd.read_csv(io.StringIO("".join(body))), meta


def plot_mesh(ax, df, meta):
    thetas = np.sort(df.theta.unique())
    phis = np.sort(df.phi.unique())
    xi = df.pivot(index="theta", columns="phi", values="xi").to_numpy()
    im = ax.pcolormesh(phis, thetas, xi, shading="auto", cmap="viridis")
    plt.colorbar(im, ax=ax, label="xi (nats)")
    if "insensitive_axis_theta" in meta:
        ts = float(meta["insensitive_axis_theta"])
        ps = float(meta["insensitive_axis_phi"])
        ax.plot([ps % (2 * np.pi), (ps + np.pi) % (2 * np.pi)], [abs(ts), np.pi - abs(ts)], "w*", ms=12)
    ax.set_xlabel("phi")
    ax.set_ylabel("theta")


def plot_series(ax, df, columns):
    for col in columns:
        if col in df and np.isfinite(df[col]).any():
            ax.plot(df.t, df[col], label=col)
    ax.set_xlabel("t")
    ax.set_ylabel("redundancy")
    ax.legend()


COLUMNS = {
    "qcb": ["r_qcb", "r_corrected", "r_discretized"],
    "holevo": ["r_exact"],
    "gaussian": ["r_qcb", "r_quadratic", "r_exact"],
    "band": ["r_band_analytic", "r_gaussian_smalltime", "r_asymptote", "r_discretized", "r_exact"],
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("kind", choices=["mesh", *COLUMNS])
    ap.add_argument("csv", nargs="+")
    ap.add_argument("--out", required=True)
    args = ap.parse_args()

    fig, axes = plt.subplots(1, len(args.csv), figsize=(5 * len(args.csv), 4), squeeze=False)
    for ax, path in zip(axes[0], args.csv):
        df, meta = read_table(path)
        if args.kind == "mesh":
            plot_mesh(ax, df, meta)
        else:
            if args.kind == "gaussian" and "row_kind" in df:
                onset = df[df.row_kind == "onset"]
                df = df[df.row_kind == "grid"]
                ax.plot(onset.t, onset.r_quadratic, "g*", ms=12, label="onset")
            plot_series(ax, df, COLUMNS[args.kind])
        ax.set_title(path.rsplit("/", 1)[-1])
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)


if __name__ == "__main__":
    main()
