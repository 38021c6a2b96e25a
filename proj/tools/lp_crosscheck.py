#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
"""Solve an exported LP file with SciPy's HiGHS backend and print the optimum.

Reads the CPLEX-style text written by `gftlab second-best --export-lp`
(Maximize / Subject To / Bounds / End) and prints the optimal objective with
17 significant digits, or exits non-zero when HiGHS does not report an optimum.
"""

import re
import sys

import numpy as np
from scipy.optimize import linprog


def parse_expression(text):
    tokens = text.split()
    terms = []
    sign, coef = 1.0, None
    for tok in tokens:
        if tok in ("+", "-"):
            sign = 1.0 if tok == "+" else -1.0
            continue
        try:
            coef = float(tok)
            continue
        except ValueError:
            pass
        terms.append((tok, sign * (1.0 if coef is None else coef)))
        sign, coef = 1.0, None
    return terms


def read_model(path):
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if not ln.startswith("\\")]
    # Join continuation lines (three-space indent) onto their statement.
    joined = []
    for ln in lines:
        if ln.startswith("   ") and joined:
            joined[-1] += " " + ln.strip()
        else:
            joined.append(ln)

    section, objective, rows, bounds = None, [], [], {}
    for ln in joined:
        s = ln.strip()
        if s in ("Maximize", "Subject To", "Bounds", "End"):
            section = s
            continue
        if not s:
            continue
        if section == "Maximize":
            objective = parse_expression(s.split(":", 1)[1])
        elif section == "Subject To":
            name, body = s.split(":", 1)
            m = re.match(r"(.*)\s(>=|<=)\s(\S+)$", body.strip())
            rows.append((parse_expression(m.group(1)), m.group(2), float(m.group(3))))
        elif section == "Bounds":
            lo, name, hi = re.match(r"(\S+)\s*<=\s*(\S+)\s*<=\s*(\S+)", s).groups()
            bounds[name] = (float(lo), float(hi))
    return objective, rows, bounds


def main():
    if len(sys.argv) != 2:
        sys.exit("usage: lp_crosscheck.py MODEL.lp")
    objective, rows, bounds = read_model(sys.argv[1])
    names = list(bounds)
    index = {n: i for i, n in enumerate(names)}
    c = np.zeros(len(names))
    for name, coef in objective:
        c[index[name]] -= coef  # linprog minimizes
    A = np.zeros((len(rows), len(names)))
    b = np.zeros(len(rows))
    for r, (terms, sense, rhs) in enumerate(rows):
        flip = -1.0 if sense == ">=" else 1.0
        for name, coef in terms:
            A[r, index[name]] += flip * coef
        b[r] = flip * rhs
    res = linprog(c, A_ub=A, b_ub=b, bounds=[bounds[n] for n in names], method="highs",
                  options={"primal_feasibility_tolerance": 1e-10,
                           "dual_feasibility_tolerance": 1e-10})
    if res.status != 0:
        sys.exit("HiGHS status %d: %s" % (res.status, res.message))
    print("%.17g" % -res.fun)


if __name__ == "__main__":
    main()
