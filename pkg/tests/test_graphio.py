"""Canonical JSON round trips and parser rejections."""

import math

import numpy as np
import pytest

from pstlab import graphio as io
from pstlab import graphs as gr
from pstlab.errors import InputError
from pstlab.partitions import Partition


def test_roundtrip_is_byte_identical():
    for g in (gr.hypercube(3), gr.christandl_path(4), gr.godsil_family(2).graph,
              gr.weighted_p5(math.sqrt(2), math.sqrt(3))):
        text = io.graph_to_json(g)
        again = io.graph_to_json(io.graph_from_json(text))
        assert text == again


def test_weights_serialized_with_17_digits():
    g = gr.christandl_path(2)  # weights sqrt(2)
    text = io.graph_to_json(g)
    assert "1.4142135623730951" in text
    parsed = io.graph_from_json(text)
    assert parsed.adjacency[0, 1] == math.sqrt(2.0)


def test_loop_encoding():
    g = gr.Graph([[2.0, 1.0], [1.0, 0.0]], name="loopy")
    text = io.graph_to_json(g)
    assert '"edges":[[0,0,2],[0,1,1]]' in text
    back = io.graph_from_json(text)
    assert back.adjacency[0, 0] == 2.0


def test_edges_sorted_lexicographically():
    text = io.graph_to_json(gr.cycle(4))
    assert text.index("[0,1,") < text.index("[0,3,") < text.index("[1,2,")


def test_name_omitted_when_absent():
    g = gr.Graph(np.zeros((1, 1)))
    assert io.graph_to_json(g) == '{"n":1,"edges":[]}'


@pytest.mark.parametrize("bad", [
    '{"n":2,"edges":[[0,1,1],[0,1,1]]}',      # duplicate
    '{"n":2,"edges":[[1,0,1]]}',              # u > v
    '{"n":2,"edges":[[0,2,1]]}',              # out of range
    '{"n":2,"edges":[[0,1,-1]]}',             # negative weight
    '{"n":0,"edges":[]}',                     # empty graph
    '{"n":2,"edges":[[0,1,1]],"extra":1}',    # unknown key
    '{"n":2}',                                # missing edges
    '{"n":2,"edges":[[0,1]]}',                # short row
    '{"n":2,"edges":[[0.5,1,1]]}',            # non-integer vertex
    'not json',
    '[1,2,3]',
])
def test_parser_rejections(bad):
    with pytest.raises(InputError):
        io.graph_from_json(bad)


def test_partition_roundtrip():
    p = Partition.from_cells([[0, 3], [1, 2]])
    text = io.partition_to_json(p)
    assert text == '{"m":2,"cells":[[0,3],[1,2]]}'
    back = io.partition_from_json(text)
    assert back == p


def test_partition_cells_sorted_by_first_element():
    p = Partition.from_cell_of([1, 0, 1, 0])
    assert io.partition_to_json(p) == '{"m":2,"cells":[[0,2],[1,3]]}'


@pytest.mark.parametrize("bad", [
    '{"m":2,"cells":[[0,1]]}',          # wrong cell count
    '{"m":1,"cells":[[]]}',             # empty cell
    '{"m":1,"cells":[[0,0]]}',          # duplicate vertex
    '{"m":2,"cells":[[0],[2]]}',        # gap in coverage
    '{"m":1}',
])
def test_partition_rejections(bad):
    with pytest.raises(InputError):
        io.partition_from_json(bad)


def test_write_refuses_overwrite(tmp_path):
    target = tmp_path / "g.json"
    io.write_graph(str(target), gr.complete(2))
    with pytest.raises(InputError):
        io.write_graph(str(target), gr.complete(2))
    io.write_graph(str(target), gr.complete(3), force=True)
    assert io.read_graph(str(target)).n == 3
