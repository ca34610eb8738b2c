"""Running the bundled scenario files the way the command line does."""
# %%
from pathlib import Path

from gaborlab import cli

here = Path(__file__).resolve().parent / "scenarios"
for path in sorted(here.glob("*.json")):
    doc = cli.run_scenario(cli.parse_config(path.read_text()))
    s = doc["summary"]
    print(f"{path.name:<32} frame={str(doc['frame']['is_frame']):<5} "
          f"passed={s['passed']} failed={s['failed']} skipped={s['skipped']}")

# %% one report in full
print(cli.report_text(cli.run_scenario(cli.parse_config((here / "z2xz4_random.json").read_text()))))
