import json

import pytest

from adaptedbasis.document import BUILTINS, DocumentError, load_builtin, load_document, parse_document
from adaptedbasis.errors import InvalidCoverError


def base():
    return {
        "group": {"type": "abelian", "invariants": [2, 2], "names": ["g", "h"]},
        "quotient_genus": 0,
        "branch_orders": [2, 2, 2, 2],
        "generating_vector": {"x": ["g", "g", "h", "h"]},
    }


def test_builtins_parse():
    genera = {name: load_builtin(name).spec.genus for name in BUILTINS}
    assert genera == {"example1": 7, "example2": 1, "example3": 4}


def test_permutation_group_descriptor():
    doc = parse_document(
        {
            "group": {"type": "permutation", "degree": 3, "generators": [[1, 0, 2], [1, 2, 0]], "names": ["s", "r"]},
            "quotient_genus": 0,
            "branch_orders": [2, 2, 3],
            "generating_vector": {"x": ["s", "s r", "r^2"]},
        }
    )
    assert doc.spec.n == 6
    assert doc.spec.genus == 0


def test_echo_round_trip():
    doc = load_builtin("example3")
    again = parse_document(json.loads(json.dumps(doc.echo())))
    assert again.echo() == doc.echo()
    assert [str(w) for w in again.transversal] == [str(w) for w in doc.transversal]


@pytest.mark.parametrize(
    "patch, where",
    [
        ({"branch_orders": [2, 1, 2, 2]}, "branch_orders"),
        ({"quotient_genus": "zero"}, "quotient_genus"),
        ({"group": {"type": "dihedral"}}, "group.type"),
        ({"group": {"type": "abelian", "invariants": [1]}}, "group"),
        ({"extra": 1}, "document"),
        ({"generating_vector": {"x": ["g", "g", "k", "h"]}}, "generating_vector.x[2]"),
        ({"transversal": ["1", "q"]}, "transversal[1]"),
        ({"generator_names": ["a", "a", "c", "d"]}, "generator_names"),
    ],
)
def test_shape_errors(patch, where):
    data = base()
    data.update(patch)
    with pytest.raises(DocumentError) as exc:
        parse_document(data)
    assert exc.value.where == where


def test_invalid_cover_is_not_a_document_error():
    data = base()
    data["generating_vector"] = {"x": ["g", "g", "g", "h"]}
    with pytest.raises(InvalidCoverError) as exc:
        parse_document(data)
    assert not isinstance(exc.value, DocumentError)
    assert exc.value.report is not None


def test_missing_field():
    data = base()
    del data["group"]
    with pytest.raises(DocumentError):
        parse_document(data)


def test_load_errors(tmp_path):
    with pytest.raises(DocumentError):
        load_document(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    with pytest.raises(DocumentError) as exc:
        load_document(bad)
    assert "line 1" in str(exc.value)
