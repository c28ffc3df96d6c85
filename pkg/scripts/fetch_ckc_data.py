"""Stub fetcher for the empirical Carbon Kuznets Curve data.

The annual per-capita CO2 emission and GDP series (1950-2008, Belgium,
Denmark, France) are distributed by their original providers and are not
redistributed here:

  * CO2 per capita: Carbon Dioxide Information Analysis Center (CDIAC)
    national emission tables.
  * GDP per capita: the Maddison Project historical statistics.

To run the empirical workflow, assemble one CSV per country under data/
with the schema

    year,gdp,co2
    1950,<per-capita GDP>,<per-capita CO2>
    ...

(strictly consecutive years, all values positive) named e.g.
data/ckc_belgium.csv, then:

    slmcoint ckc --data data/ckc_belgium.csv --country Belgium --out out/belgium

The acceptance test touching the empirical fits skips automatically while
these files are absent.  This script only validates files already placed
in data/.
"""

import glob
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), os.pardir, "src"))

from slmcoint import ingest_ckc_csv  # noqa: E402


def main():
    data_dir = os.path.join(os.path.dirname(__file__), os.pardir, "data")
    pattern = os.path.join(data_dir, "ckc_*.csv")
    files = sorted(glob.glob(pattern))
    if not files:
        print(__doc__)
        print(f"no files matching {pattern} yet")
        return 1
    for path in files:
        series = ingest_ckc_csv(path)
        print(f"{os.path.basename(path)}: OK, {len(series)} rows "
              f"({series.years[0]}-{series.years[-1]})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
