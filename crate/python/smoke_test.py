"""Smoke test for the outerdom extension module."""

import json

import outerdom


def main():
    hexagon = outerdom.named_graph("hexagon_fan3")
    assert hexagon.n == 6
    assert hexagon.degree_two_vertices() == [2, 4, 6]
    assert hexagon.domination_number() == 2
    assert hexagon.violates_li_bound()

    fig = outerdom.named_graph("figure2")
    report = fig.bounds()
    assert (report["n"], report["k"], report["gamma"]) == (14, 1, 4)
    trace = fig.dominate()
    assert trace["set"]["size"] == 4
    outerdom.verify_trace(json.dumps(trace))

    for m in (1, 2, 3):
        assert outerdom.figure2_family(m).violates_li_bound()

    g = outerdom.MopGraph(6, [(1, 3), (3, 5), (5, 1)])
    assert g == hexagon
    assert outerdom.MopGraph.from_json(g.to_json()) == g
    try:
        outerdom.MopGraph(6, [(1, 4), (2, 5), (3, 6)])
    except ValueError:
        pass
    else:
        raise AssertionError("crossing chords accepted")

    assert len(outerdom.enumerate_mops(7)) == 42
    octa = outerdom.named_graph("octahedron")
    assert octa.domination_number() == 2
    assert len(outerdom.gamma_exact(octa.n, octa.edges())) == 2

    t = outerdom.random_ht(30, 7)
    dom, rep = t.dominate()
    assert outerdom.is_dominating(t.n, t.edges(), dom)
    assert rep["size"] == len(dom) <= 30 * 5 // 16
    print("smoke test passed")


if __name__ == "__main__":
    main()
