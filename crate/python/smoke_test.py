"""Smoke test for the cayley_drg_py extension.

Build and install first:
    pip install --no-build-isolation -e crates/python
"""

import cayley_drg_py as cd

g = cd.Group("3^1x3")
assert g.order == 9
assert g.automorphism_count() == 48
assert len(g.inverse_classes()) == 4

lattice = "(1,0),(2,0),(0,1),(0,2)"
graph = cd.CayleyGraph(g, lattice)
assert graph.valency == 4
assert graph.intersection_array() == "{4,2; 1,2}"
assert graph.family() == "TDLineGraph(2,3)"
assert len(graph.edges()) == 18

verdict = cd.check(g, "(1,0),(2,0)")
assert verdict["drg"] is False and verdict["connected"] is False

report = cd.census(g)
assert report["totals"]["drgSets"] == 11
assert report["totals"]["parameterClasses"] == 3
assert report["anomalies"] == []
assert cd.census(cd.Group("5^1x5"), threads=2, partitions=4)["totals"]["drgSets"] == 57

td = cd.construct("td-line", cd.Group.pair(5, 1), r=3)
assert td.intersection_array() == "{12,6; 1,6}"

audit = cd.fourier_audit(graph)
assert audit["failure"] is None

cert = cd.difference_set(cd.Group("Zn:7"), "(1,0),(2,0),(4,0)")
assert cert["lambda"] == 1

bip = cd.bipartite_from_rows(8, [1, 7], [3, 5])
assert bip["prediction_holds"]

try:
    cd.Group("4x")
except ValueError:
    pass
else:
    raise AssertionError("bad group spec accepted")

print("python smoke test ok")
