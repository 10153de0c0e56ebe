#!/usr/bin/env python3
"""Document and validate the externally sourced trade/indicator datasets.

The full-scale country pipeline needs two datasets that cannot be bundled
here, so this script does not download anything. It prints where to get
them, how to shape them into the expected CSV schemas, and (with --check)
validates files you have prepared, printing a sha256 for your records.

Sources
-------
* Bilateral trade flows: the CEPII gravity/trade databases
  (https://www.cepii.fr/CEPII/en/bdd_modele/bdd_modele.asp) publish yearly
  bilateral flows by sector for ~162 reporter countries. Export the flows
  you want into:  origin,dest,sector,year,value_usd  (ISO-3 codes, USD).
* Country environmental indicators: the World Bank ESG / WDI series
  (https://databank.worldbank.org/source/environment-social-and-governance)
  cover ~71 indicators across ~239 countries. Export a long table:
  entity,indicator,value  (one row per country x indicator), plus a spec
  file  indicator,higher_is_better  naming the series you selected.

A six-indicator environmental selection that works well: carbon dioxide
emissions, methane emissions, nitrous oxide emissions, level of water
stress, PM2.5 air pollution, renewable energy consumption (the only one
where higher is better). Record which vintage/year you exported; country
membership of the extremes can shift by a country or two between vintages.

Then run:
  harmnet trade --flows flows.csv --indicators indicators.csv \\
      --indicator-spec indicator_spec.csv --year 2020 --outdir out
and point HARMNET_TRADE_DATA at the directory to enable the full-scale
acceptance test.
"""

import argparse
import hashlib
import sys
from pathlib import Path


def sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def check(directory: Path) -> int:
    from harmnet.ingest import (
        load_indicator_specs,
        load_indicator_table,
        load_trade_flows,
    )

    ok = True
    expected = {
        "flows.csv": lambda p: load_trade_flows(p),
        "indicators.csv": lambda p: load_indicator_table(p),
        "indicator_spec.csv": lambda p: load_indicator_specs(p),
    }
    for name, loader in expected.items():
        path = directory / name
        if not path.exists():
            print(f"MISSING {name}")
            ok = False
            continue
        try:
            loaded = loader(path)
            size = len(loaded) if not hasattr(loaded, "entities") else len(loaded.entities)
            print(f"OK      {name}  rows/entities={size}  sha256={sha256(path)}")
        except Exception as e:  # surface the loader's complaint verbatim
            print(f"INVALID {name}: {e}")
            ok = False
    return 0 if ok else 1


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", metavar="DIR",
                        help="validate prepared files in DIR and print checksums")
    args = parser.parse_args()
    if args.check:
        return check(Path(args.check))
    print(__doc__)
    return 0


if __name__ == "__main__":
    sys.exit(main())
