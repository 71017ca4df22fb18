#!/usr/bin/env python3
# Graph-algebra combinatorics: vertex commutators, the single-exit
# projection collapse, and degree-zero survey reports.

import json

from ncdiff import (full_isometry_criterion, h0_report, parse_graph,
                    vertex_commutator)
from ncdiff.graph_algebra import (edge_isometry, expand_projection_check,
                                  h0_report_json)

star = parse_graph("""
# four leaves pointing at a common root
vertex root
vertex v1
vertex v2
vertex v3
vertex v4
edge e1 v1 root
edge e2 v2 root
edge e3 v3 root
edge e4 v4 root
""")

se = edge_isometry(star, "e1")
print("[p_v1, s_e1] = s_e1:", (vertex_commutator("v1", se) - se).norm() == 0.0)
print("[p_root, s_e1] = -s_e1:", (vertex_commutator("root", se) + se).norm() == 0.0)
print("[p_v2, s_e1] = 0:", vertex_commutator("v2", se).norm() == 0.0)

rep = h0_report(star, max_len=3)
print("\nstar tree: distinct projections =", rep["projection_count"],
      "(= vertex count)")

line = parse_graph("\n".join(
    [f"vertex w{i}" for i in range(4)]
    + [f"edge f{i} w{i} w{i + 1}" for i in range(3)]))
mu = line.path(["f0", "f1", "f2"])
print("\nline path criterion (every source has one exit):",
      full_isometry_criterion(line, mu))
print("bounded completeness expansion confirms s_mu s_mu* = p_{s(mu)}:",
      expand_projection_check(line, mu))

loop = parse_graph("vertex c\nedge l c c\n")
rep = h0_report(loop, max_len=2)
print("\nsingle loop, no exit: circle flags =", len(rep["circle_flags"]))
print("full JSON report:")
print(json.dumps(h0_report_json(rep), indent=2)[:400], "...")
