"""Run every spec in experiments/calibration/ and tabulate rejection rates.

    python experiments/calibrate.py [--out experiments/calibration_summary.csv]
"""

import argparse
import csv
import math
from fractions import Fraction
from pathlib import Path

from cliquebetti.complex import count_clique_copies
from cliquebetti.experiment import ExperimentSpec, run_experiment

HERE = Path(__file__).parent


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", type=Path, default=HERE / "calibration_summary.csv")
    args = parser.parse_args()
    rows = []
    for path in sorted((HERE / "calibration").glob("*.json")):
        spec = ExperimentSpec.from_json(path.read_text())
        g = spec.build_graph()
        m = spec.tester_params["k"] + 2
        density = Fraction(count_clique_copies(g, m), math.comb(g.n, m))
        results = run_experiment(spec)
        points = spec.points()
        for pid, point in enumerate(points):
            mine = [r for r in results if r["point_id"] == pid]
            rejected = sum(r["verdict"] == "reject" for r in mine)
            rows.append({
                "spec": path.stem,
                "global_density": f"{float(density):.6f}",
                "sample_size": point["sample_size"],
                "trials": point["trials"],
                "queries": mine[0]["queries_used"],
                "reject_rate": f"{rejected / len(mine):.2f}",
            })
        print(f"{path.stem}: done")
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)


if __name__ == "__main__":
    main()
