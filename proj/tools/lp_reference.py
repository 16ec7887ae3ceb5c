#!/usr/bin/env python3
"""Cross-check the built-in simplex against HiGHS (through scipy) on dumped relaxations."""

import argparse
import pathlib
import re
import subprocess
import sys

import numpy as np
from scipy.optimize import linprog
from scipy.sparse import csr_matrix, vstack


def read_lp(path):
    lines = pathlib.Path(path).read_text().split("\n")
    sense = lines[0].split()[1]
    offset = float(lines[1].split()[1])
    n = int(lines[2].split()[1])
    lb, ub, c = [], [], []
    for line in lines[3:3 + n]:
        tok = line.split()
        lb.append(float(tok[3]))
        ub.append(float(tok[4]))
        c.append(float(tok[5]))
    m = int(lines[3 + n].split()[1])
    rows = {"L": [], "G": [], "E": []}
    for line in lines[4 + n:4 + n + m]:
        tok = line.split()
        terms = [(int(t.split(":")[0]), float(t.split(":")[1])) for t in tok[6:]]
        rows[tok[3]].append((terms, float(tok[4])))
    return sense, offset, np.array(lb), np.array(ub), np.array(c), rows


def matrix(rows, n, scale):
    data, ri, ci, rhs = [], [], [], []
    for i, (terms, b) in enumerate(rows):
        for j, v in terms:
            data.append(scale * v)
            ri.append(i)
            ci.append(j)
        rhs.append(scale * b)
    if not rows:
        return None, None
    return csr_matrix((data, (ri, ci)), shape=(len(rows), n)), np.array(rhs)


def reference_objective(path):
    sense, offset, lb, ub, c, rows = read_lp(path)
    n = len(c)
    sgn = -1.0 if sense == "max" else 1.0
    a_le, b_le = matrix(rows["L"], n, 1.0)
    a_ge, b_ge = matrix(rows["G"], n, -1.0)
    if a_le is not None and a_ge is not None:
        a_ub, b_ub = vstack([a_le, a_ge]), np.concatenate([b_le, b_ge])
    else:
        a_ub, b_ub = (a_le, b_le) if a_le is not None else (a_ge, b_ge)
    a_eq, b_eq = matrix(rows["E"], n, 1.0)
    bounds = [(None if np.isinf(l) else l, None if np.isinf(u) else u) for l, u in zip(lb, ub)]
    res = linprog(sgn * c, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq, bounds=bounds, method="highs")
    if res.status != 0:
        return res.status, None
    return 0, sgn * res.fun + offset


def run(cli, *args):
    out = subprocess.run([cli, *args], check=True, capture_output=True, text=True)
    return out.stdout


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--cli", required=True)
    ap.add_argument("--work", required=True)
    ap.add_argument("--tol", type=float, default=1e-6)
    opts = ap.parse_args()
    work = pathlib.Path(opts.work)
    work.mkdir(parents=True, exist_ok=True)

    cases = [
        ("fc", ["--nodes", "10", "--frac", "0.2"], "mccormick"),
        ("fc", ["--nodes", "8", "--frac", "0.5"], "rlt1"),
        ("tr", ["--nodes", "10", "--services", "4"], "mccormick"),
        ("tr", ["--nodes", "6", "--services", "3"], "rlt1"),
    ]
    failed = 0
    for seed in (1, 2):
        for family, extra, relax in cases:
            inst = work / f"{family}_{seed}_{relax}.json"
            lp = work / f"{family}_{seed}_{relax}.lp"
            run(opts.cli, "gen", "--family", family, "--seed", str(seed), *extra, "--out", str(inst))
            run(opts.cli, "lp", "dump", "--instance", str(inst), "--relaxation", relax, "--out", str(lp))
            text = run(opts.cli, "lp", "solve", "--lp", str(lp))
            ours = re.search(r"objective (\S+)", text)
            status, ref = reference_objective(lp)
            if ours is None or ref is None:
                ok = ours is None and ref is None
                detail = f"status ours={text.split()[1]} highs={status}"
            else:
                v = float(ours.group(1))
                err = abs(v - ref) / max(1.0, abs(ref))
                ok = err <= opts.tol
                detail = f"ours={v:.10g} highs={ref:.10g} rel={err:.2e}"
            failed += not ok
            print(f"{'ok  ' if ok else 'FAIL'} {lp.name}: {detail}")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
