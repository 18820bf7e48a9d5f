"""
A bounded search in genus two and three
=======================================

Enumerate origamis stratum by stratum, keep one per SL(2,Z)-orbit and run
the combinatorial filters.  The reports land in a line-delimited file
with a summary record at the end.
"""

import json
import tempfile
from pathlib import Path

from rank1lab.search import SearchJob, run_search

out = Path(tempfile.mkdtemp())

g2 = SearchJob(strata=[(2,), (1, 1)], min_squares=3, max_squares=7, output_path=str(out / "g2.jsonl"))
print("genus 2:", run_search(g2))

g3 = SearchJob(strata=[(1, 1, 1, 1)], min_squares=8, max_squares=8, output_path=str(out / "g3.jsonl"))
summary = run_search(g3)
print("genus 3, 8 squares:", summary["candidates"], "orbits,", summary["passed"], "passing")

# every failure names the direction and the stage that rejected it
for line in (out / "g3.jsonl").read_text().splitlines()[:4]:
    rec = json.loads(line)
    fails = rec["filter_report"]["failures"]
    print(rec["orbit_size"], rec["verdict"], fails[0]["detail"] if fails else "")
