from f1rep.dot import PALETTE, export_dot
from f1rep.fixtures import TWO_LOOPS, fixture_b
from f1rep.tensor import tensor
from f1rep.winding import Winding


def count(text, needle):
    return sum(needle in line for line in text.splitlines())


def test_fixture_b_winding():
    text = export_dot(fixture_b(), "B")
    assert text.startswith('digraph "B" {')
    assert count(text, "[label=") - count(text, "->") == 3
    assert count(text, "->") == 6
    assert {PALETTE[0], PALETTE[1]} == {c for c in PALETTE[:2] if c in text}
    assert count(text, f'color="{PALETTE[0]}"') == 3 and count(text, f'color="{PALETTE[1]}"') == 3
    assert '"1" [label="1 : *"]' in text


def test_empty_winding():
    text = export_dot(Winding.empty(TWO_LOOPS))
    assert "->" not in text and ":" not in text
    assert text.strip().endswith("}")


def test_tensor_square_of_fixture_b():
    b = fixture_b()
    text = export_dot(tensor(b, b))
    assert count(text, "subgraph") == 2
    assert count(text, ": *") == 9
    assert count(text, "(admissible, covering)") == 2


def test_status_annotation():
    w = Winding.build(TWO_LOOPS, [("1", "*"), ("2", "*")], [("a", "1", "2", "blue")])
    text = export_dot(tensor(w, w))
    assert "(neither)" in text or "(admissible)" in text
    assert "covering" in text
    plain = export_dot(tensor(w, w), annotate=False)
    assert "admissible" not in plain


def test_quoting():
    w = Winding.build(TWO_LOOPS, [('x"1', "*")], [('e"', 'x"1', 'x"1', "red")])
    text = export_dot(w)
    assert '"x\\"1"' in text
