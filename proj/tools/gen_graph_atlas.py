#!/usr/bin/env python3
"""Write every connected simple graph on 1..7 vertices, one per isomorphism class.

Line format: n followed by the edges as u-v pairs.
"""
import sys

import networkx as nx


def main(path):
    lines = []
    for g in nx.graph_atlas_g():
        n = g.number_of_nodes()
        if n == 0 or not nx.is_connected(g):
            continue
        edges = " ".join(f"{u}-{v}" for u, v in sorted(g.edges()))
        lines.append(f"{n} {edges}".rstrip())
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"{len(lines)} graphs")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/connected_graphs_7.txt")
