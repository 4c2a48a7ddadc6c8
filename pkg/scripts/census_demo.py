"""Run the statistics pipeline on the bundled sample census.

Ingests the three packaged fixture rows, prints the derived columns and
aggregates, and emits derived.csv / plots.json into ./census_out.

Run: python3 scripts/census_demo.py [output_dir]
"""

import importlib.resources
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from knotsig import census


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("census_out")
    sample = importlib.resources.files("knotsig") / "data" / "sample_census.csv"
    rows = census.ingest(sample)
    report = census.derive(rows)
    print("%-8s %10s %10s %10s %10s" % ("name", "slope", "2s-slope", "c1", "sig_hat"))
    for d in report.rows:
        print(
            "%-8s %10.4f %10.4f %10.5f %10.4f"
            % (d.row.name, d.slope, d.gap, d.c1, d.sigma_hat)
        )
    print()
    print("correlation(sigma, slope): %.4f" % report.correlation)
    print("envelope fraction (b=c=2): %.2f" % report.envelope_fraction)
    agreement = census.sign_agreement(rows)
    print("sign agreement: %s" % ("n/a" if agreement is None else "%.2f" % agreement))
    csv_path, json_path = census.emit(report, out_dir)
    print("wrote %s and %s" % (csv_path, json_path))


if __name__ == "__main__":
    main()
