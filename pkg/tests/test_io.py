from fractions import Fraction

import pytest

from gch.canonical import canonical_form
from gch.families import dumbbell, theta
from gch.generate import EnumSpec, enumerate_graphs
from gch.io import (
    DocumentError,
    document_to_graph,
    graph_to_document,
    matrix_to_text,
    parse_graph_json,
    text_to_matrix,
)
from gch.linalg import SparseMatrix
from gch.ribbon import RibbonStructure


def test_theta_document():
    g, rib = document_to_graph({"vertices": 2, "weights": [0, 0],
                                "edges": [[0, 1], [0, 1], [0, 1]], "ribbon": None})
    assert rib is None
    assert g.vertex_count == 2
    assert g.edges == ((0, 1),) * 3


def test_tadpole_edge():
    g, _ = document_to_graph({"vertices": 1, "weights": [0], "edges": [[0, 0]]})
    assert g.is_tadpole(0)


def test_round_trip_canonicalizes():
    for g in (theta(), dumbbell()):
        doc = graph_to_document(g)
        back, _ = document_to_graph(doc)
        assert canonical_form(back).certificate == canonical_form(g).certificate


def test_round_trip_ribbon():
    g = theta()
    rib = RibbonStructure(g, ((0, 2, 4), (1, 5, 3)))
    doc = graph_to_document(g, rib)
    back, back_rib = document_to_graph(doc)
    assert back == g
    assert back_rib == rib


def test_round_trip_whole_enumeration():
    for genus in (2, 3, 4):
        for form in enumerate_graphs(EnumSpec(genus=genus, weighted=True,
                                              allow_tadpoles=True, min_edges=1)):
            doc = graph_to_document(form.graph)
            back, _ = document_to_graph(doc)
            assert canonical_form(back).certificate == form.certificate


@pytest.mark.parametrize("doc,field", [
    ({"vertices": -1, "edges": []}, "vertices"),
    ({"vertices": 2, "weights": [0], "edges": []}, "weights"),
    ({"vertices": 1, "weights": [0], "edges": [[0, 1]]}, "edges[0]"),
    ({"vertices": 1, "weights": [0], "edges": [[0]]}, "edges[0]"),
    ({"vertices": 1, "weights": [0], "edges": [[0, 0]], "ribbon": [[0, 0]]}, "ribbon[0]"),
    ({"vertices": 1, "weights": [0], "edges": [[0, 0]], "ribbon": [[0]]}, "ribbon"),
])
def test_document_errors(doc, field):
    with pytest.raises(DocumentError) as err:
        document_to_graph(doc)
    assert err.value.field == field


def test_parse_graph_json_rejects_bad_json():
    with pytest.raises(DocumentError):
        parse_graph_json("{nope")


def test_matrix_round_trip():
    m = SparseMatrix(3, 4, {(0, 0): Fraction(1), (2, 3): Fraction(-5, 3), (1, 2): Fraction(7)})
    text = matrix_to_text(m)
    lines = text.strip().splitlines()
    assert lines[0] == "3 4 M"
    assert lines[-1] == "0 0 0"
    assert "3 4 -5/3" in lines
    back = text_to_matrix(text)
    assert back.rows == 3 and back.cols == 4
    assert back.entries == m.entries


def test_matrix_parse_errors():
    with pytest.raises(ValueError):
        text_to_matrix("")
    with pytest.raises(ValueError):
        text_to_matrix("2 2\n0 0 0")
    with pytest.raises(ValueError):
        text_to_matrix("2 2 M\n1 1 1")
