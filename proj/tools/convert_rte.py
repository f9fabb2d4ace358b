#!/usr/bin/env python3
"""Convert the RTE-1 crowd annotations (Snow et al. release, rte.standardized.tsv)
into the canonical dataset CSV read by `crowdalloc replay`.

The upstream file is tab-separated with columns
    !amt_annotation_ids  !amt_worker_ids  orig_id  response  gold
one row per (task, worker) response. Labels keep file order per task.

    python3 convert_rte.py rte.standardized.tsv rte.csv
"""
import csv
import sys
from collections import OrderedDict


def convert(src, dst):
    tasks = OrderedDict()
    with open(src, newline="", encoding="utf-8") as f:
        reader = csv.reader(f, delimiter="\t")
        header = [h.strip().lstrip("!") for h in next(reader)]
        col = {name: i for i, name in enumerate(header)}
        for row in reader:
            if not row:
                continue
            tid = "rte_" + row[col["orig_id"]].strip()
            gold = row[col["gold"]].strip()
            response = row[col["response"]].strip()
            entry = tasks.setdefault(tid, {"gold": gold, "labels": []})
            if entry["gold"] != gold:
                raise SystemExit(f"{tid}: inconsistent gold labels")
            entry["labels"].append(response)
    with open(dst, "w", newline="\n", encoding="utf-8") as out:
        out.write("task_id,gold,labels\n")
        for tid, entry in tasks.items():
            out.write(f"{tid},{entry['gold']},{''.join(entry['labels'])}\n")
    return len(tasks)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        raise SystemExit(__doc__)
    n = convert(sys.argv[1], sys.argv[2])
    print(f"wrote {n} tasks to {sys.argv[2]}")
