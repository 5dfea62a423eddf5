"""Report rendering: delimited tables plus matplotlib figures.

Separation certificates get their pairwise-norm table as CSV, the margin
per pair as CSV, a heatmap of the table and a bar chart of the margins;
value and selftest certificates get their claim tables as CSV with a
comparison figure.  Figures go through the Agg backend so the CLI works
headless.
"""

from __future__ import annotations

import csv
import os


def _plt():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_family_report(doc: dict, out_dir: str) -> list[str]:
    payload = doc["payload"]
    os.makedirs(out_dir, exist_ok=True)
    written = []
    m = len(payload["coefficients"])
    labels = [f"z{k + 1}" for k in range(m)]
    table = payload["pairwise"]
    mode = payload["mode"]
    op = "+" if mode == "sum" else "-"

    path = os.path.join(out_dir, "pairwise_norms.csv")
    _write_csv(path, [""] + labels, [[labels[i]] + table[i] for i in range(m)])
    written.append(path)

    rows = []
    for k in range(m):
        for l in range(k + 1, m):
            rows.append([f"{labels[k]}{op}{labels[l]}", table[k][l], table[k][l] - 1.0])
    path = os.path.join(out_dir, "margins.csv")
    _write_csv(path, ["pair", "norm", "margin"], rows)
    written.append(path)

    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.2, 4.4))
    im = ax.imshow(table, cmap="viridis")
    ax.set_xticks(range(m), labels, rotation=45, fontsize=8)
    ax.set_yticks(range(m), labels, fontsize=8)
    margin = payload["margin"]
    margin_text = f"{margin:.4g}" if margin is not None else "n/a"
    ax.set_title(f"pairwise ||z_k {op} z_l||  (margin {margin_text})")
    fig.colorbar(im, ax=ax, shrink=0.85)
    fig.tight_layout()
    path = os.path.join(out_dir, "separation_heatmap.png")
    fig.savefig(path, dpi=130)
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(max(4.0, 0.3 * len(rows)), 3.2))
    ax.bar(range(len(rows)), [r[2] for r in rows], color="#2a6f97")
    ax.axhline(0.0, color="black", linewidth=0.8)
    ax.set_xticks(range(len(rows)), [r[0] for r in rows], rotation=90, fontsize=6)
    ax.set_ylabel("margin = norm - 1")
    ax.set_title("separation margins per pair")
    fig.tight_layout()
    path = os.path.join(out_dir, "margin_bars.png")
    fig.savefig(path, dpi=130)
    plt.close(fig)
    written.append(path)
    return written


def write_table_report(doc: dict, out_dir: str) -> list[str]:
    """Value and selftest certificates: claims vs computed values."""
    payload = doc["payload"]
    os.makedirs(out_dir, exist_ok=True)
    written = []
    if doc["kind"] == "selftest_report":
        rows = [[r["name"], r["expected"], r["computed"], r["passed"], r["seconds"]]
                for r in payload["rows"]]
        header = ["criterion", "expected", "computed", "passed", "seconds"]
        flags = [1.0 if r["passed"] else 0.0 for r in payload["rows"]]
        names = [r["name"] for r in payload["rows"]]
    else:
        rows = [[payload["function"], payload["l"], payload["value"]]]
        header = ["function", "l", "value"]
        flags = [1.0]
        names = [f"{payload['function']}({payload['l']})"]
    path = os.path.join(out_dir, "values.csv")
    _write_csv(path, header, rows)
    written.append(path)

    plt = _plt()
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(names)), 3.0))
    colors = ["#2a9d8f" if f else "#e76f51" for f in flags]
    ax.bar(range(len(names)), flags, color=colors)
    ax.set_xticks(range(len(names)), names, rotation=90, fontsize=6)
    ax.set_ylim(0, 1.2)
    ax.set_ylabel("pass")
    ax.set_title("certified claims")
    fig.tight_layout()
    path = os.path.join(out_dir, "claims.png")
    fig.savefig(path, dpi=130)
    plt.close(fig)
    written.append(path)
    return written


def write_report(doc: dict, out_dir: str) -> list[str]:
    if doc["kind"] == "separated_family":
        return write_family_report(doc, out_dir)
    if doc["kind"] in ("value", "selftest_report"):
        return write_table_report(doc, out_dir)
    raise ValueError(f"no report renderer for certificate kind {doc['kind']!r}")
