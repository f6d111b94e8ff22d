"""Survey report rendering: delimited output and figures."""

from __future__ import annotations

import csv

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV_COLUMNS = [
    "file",
    "order",
    "class",
    "coclass",
    "d",
    "fix",
    "status",
    "strategy",
    "certificate_sha256",
    "wall_ms",
]


def write_survey_csv(report: dict, path: str):
    timings = report.get("timings_ms", {})
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for row in report["rows"]:
            w.writerow(
                {
                    "file": row["file"],
                    "order": row["fingerprint"]["order"],
                    "class": row["fingerprint"]["class"],
                    "coclass": row["fingerprint"]["coclass"],
                    "d": row["d"],
                    "fix": row["fix"],
                    "status": row["status"],
                    "strategy": row.get("strategy", ""),
                    "certificate_sha256": row.get("certificate_sha256", ""),
                    "wall_ms": timings.get(row["file"], ""),
                }
            )


def render_survey_figures(report: dict, outdir):
    """Strategy histogram and wall-time vs order scatter, written as PNGs."""
    import os

    os.makedirs(outdir, exist_ok=True)
    rows = report["rows"]
    timings = report.get("timings_ms", {})
    strat_counts = {}
    for row in rows:
        key = row.get("strategy", row["status"]).split(";")[-1]
        strat_counts[key] = strat_counts.get(key, 0) + 1
    fig, ax = plt.subplots(figsize=(7, 4))
    keys = sorted(strat_counts)
    ax.bar(range(len(keys)), [strat_counts[k] for k in keys], color="#4878a8")
    ax.set_xticks(range(len(keys)))
    ax.set_xticklabels(keys, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("groups")
    ax.set_title("certification strategy per catalog group")
    fig.tight_layout()
    strat_path = os.path.join(outdir, "strategies.png")
    fig.savefig(strat_path, dpi=150)
    plt.close(fig)

    fig, ax = plt.subplots(figsize=(6, 4))
    xs = [row["fingerprint"]["order"] for row in rows]
    ys = [max(timings.get(row["file"], 1), 1) for row in rows]
    ok = [row["status"] == "certificate" for row in rows]
    ax.scatter(
        [x for x, o in zip(xs, ok) if o],
        [y for y, o in zip(ys, ok) if o],
        marker="o",
        label="certified",
    )
    if not all(ok):
        ax.scatter(
            [x for x, o in zip(xs, ok) if not o],
            [y for y, o in zip(ys, ok) if not o],
            marker="x",
            color="crimson",
            label="not certified",
        )
    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("group order")
    ax.set_ylabel("wall time (ms)")
    ax.set_title("survey wall time")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    time_path = os.path.join(outdir, "timing.png")
    fig.savefig(time_path, dpi=150)
    plt.close(fig)
    return [strat_path, time_path]
