#!/usr/bin/env python3
"""Search small random 3-CNFs whose variable-clause graph is planar and
3-connected, and write them as DIMACS files."""

import argparse
import os
import random

import networkx as nx


def variable_clause_graph(nvars, clauses):
    g = nx.Graph()
    g.add_nodes_from(("v", i) for i in range(nvars))
    for c, cl in enumerate(clauses):
        for lit in cl:
            g.add_edge(("v", abs(lit) - 1), ("c", c))
    return g


def acceptable(nvars, clauses):
    g = variable_clause_graph(nvars, clauses)
    if g.number_of_nodes() < 4 or not nx.is_connected(g):
        return False
    if not nx.check_planarity(g)[0]:
        return False
    return nx.node_connectivity(g) >= 3


def random_formula(rng, nvars, nclauses):
    clauses = []
    for _ in range(nclauses):
        vs = rng.sample(range(1, nvars + 1), 3)
        clauses.append([v if rng.random() < 0.5 else -v for v in vs])
    return clauses


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--count", type=int, default=6)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--max-vars", type=int, default=8)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    os.makedirs(args.out, exist_ok=True)
    found, seen = 0, set()
    nvars = 4
    while found < args.count:
        # one formula per size, cycling through the sizes
        # planar bipartite with clause degree 3 and variable degree >= 3 needs
        # nvars <= nclauses <= 2 nvars - 4
        for _ in range(20000):
            m = rng.randint(nvars, 2 * nvars - 4)
            f = random_formula(rng, nvars, m)
            key = (nvars, tuple(sorted(tuple(sorted(c)) for c in f)))
            if key in seen or not acceptable(nvars, f):
                continue
            seen.add(key)
            found += 1
            path = os.path.join(args.out, "f%02d_v%d_c%d.cnf" % (found, nvars, m))
            with open(path, "w") as fh:
                fh.write("c 3-connected planar variable-clause graph, seed %d\n" % args.seed)
                fh.write("p cnf %d %d\n" % (nvars, m))
                for c in f:
                    fh.write(" ".join(str(x) for x in c) + " 0\n")
            break
        nvars = nvars + 1 if nvars < args.max_vars else 4


if __name__ == "__main__":
    main()
