import pytest
from hypothesis import given

from dynmatch.events import (
    StreamFormatError,
    UpdateEvent,
    UpdateStream,
    loads_stream,
)

from .conftest import update_sequences


def test_roundtrip_text():
    s = UpdateStream(4, [UpdateEvent.insert(0, 1), UpdateEvent.query(), UpdateEvent.delete(0, 1)])
    assert loads_stream(s.dumps()).events == s.events


def test_comments_and_blank_lines():
    s = loads_stream("# header\nn 3\n\n+ 0 1\n# note\n+ 1 2\n")
    assert s.n == 3 and s.edge_order() == [(0, 1), (1, 2)]


@pytest.mark.parametrize(
    "text, line",
    [
        ("n 3\n+ 0 1\n+ 1 0\n", 3),  # duplicate live edge
        ("n 3\n- 0 1\n", 2),  # delete of absent edge
        ("n 3\n+ 0 0\n", 2),  # self loop
        ("n 3\n+ 0 7\n", 2),  # vertex out of range
        ("n 3\n* 0 1\n", 2),  # unknown kind
        ("+ 0 1\n", 1),  # missing header
    ],
)
def test_malformed_streams_report_line(text, line):
    with pytest.raises(StreamFormatError) as exc:
        loads_stream(text)
    assert exc.value.lineno == line


@given(update_sequences())
def test_valid_sequences_ingest(ops):
    events = [UpdateEvent.insert(u, v) if k == "+" else UpdateEvent.delete(u, v) for k, u, v in ops]
    s = UpdateStream(8, events)
    again = loads_stream(s.dumps())
    assert again.final_graph() == s.final_graph()
