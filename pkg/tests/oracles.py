"""Independent second-pass recount of detector outcomes from an event log.

Only the CSV text is used: flags are re-derived from the logged claimed
distance and expectations, then tallied per detector.
"""

import csv

LABELS = ("ART", "eART", "Exchange", "Merged")
E_COLUMN = {"eART": "eart_E", "Exchange": "exch_E", "Merged": "merged_E"}


def recount(lines, art_threshold=400.0, tau=0.5):
    counts = {label: [0, 0, 0, 0] for label in LABELS}  # rb, rm, fb, fm
    mismatches = 0
    for row in csv.DictReader(lines):
        attacker = row["is_attacker"] == "1"
        derived = {"ART": float(row["claimed_dist"]) > art_threshold}
        for label, col in E_COLUMN.items():
            derived[label] = float(row[col]) < tau
        for label in LABELS:
            logged = row[f"flagged_{label}"] == "1"
            mismatches += logged != derived[label]
            c = counts[label]
            if attacker:
                c[1] += 1
                c[3] += logged
            else:
                c[0] += 1
                c[2] += logged
    return counts, mismatches


def as_tuples(confusion):
    return {
        label: [c.received_benign, c.received_malicious, c.flagged_benign, c.flagged_malicious]
        for label, c in confusion.items()
    }
