import json

import pytest

from flasque import tate
from flasque.fileformat import (FormatError, dumps, klein_preset_dict, load_document, parse_document,
                                preset_document, shipped_preset)


@pytest.fixture(scope="module")
def klein():
    return klein_preset_dict()


def test_shipped_file_matches_generated(klein):
    assert shipped_preset("klein") == dumps(klein)


def test_round_trip(klein, tmp_path):
    path = tmp_path / "k.json"
    path.write_text(dumps(klein), encoding="utf-8")
    doc = load_document(path)
    assert set(doc.lattices) == {"Z", "ZG", "IG", "ZG_IG", "ZG_ZG", "Tstar", "Fstar", "Pstar"}
    assert doc.lattice("Tstar").rank == 4
    assert doc.maps["phi"].domain == doc.lattice("ZG_IG")
    assert str(tate(1, doc.group.whole, doc.lattice("IG"))) == "Z/4"
    assert json.loads(dumps(klein)) == klein


def test_dumps_is_deterministic(klein):
    assert dumps(klein) == dumps(klein_preset_dict())
    assert "[1, 0, 0, 0]" in dumps(klein)


def minimal():
    return {"group": {"elements": ["1", "s"], "table": [[0, 1], [1, 0]]},
            "lattices": {"Z": {"rank": 1, "action": {"1": [[1]], "s": [[1]]}},
                         "S": {"rank": 1, "action": {"1": [[1]], "s": [[-1]]}}},
            "maps": {"two": {"dom": "Z", "cod": "Z", "matrix": [[2]]}}}


def test_minimal_document():
    doc = parse_document(minimal())
    assert str(tate(1, doc.group.whole, doc.lattice("S"))) == "Z/2"


def broken(path, value):
    d = minimal()
    node = d
    for k in path[:-1]:
        node = node[k]
    if value is KeyError:
        del node[path[-1]]
    else:
        node[path[-1]] = value
    return d


@pytest.mark.parametrize("data", [
    [],
    {"group": {"elements": ["1"], "table": [[0]]}, "extra": 1},
    broken(("group", "table"), [[0, 1], [1, 1]]),
    broken(("group", "elements"), KeyError),
    broken(("lattices", "Z", "action", "1"), KeyError),
    broken(("lattices", "Z", "action", "t"), [[1]]),
    broken(("lattices", "Z", "action", "s"), [[1.5]]),
    broken(("lattices", "Z", "action", "s"), [[True]]),
    broken(("lattices", "Z", "action", "s"), [[2]]),
    broken(("lattices", "Z", "rank"), -1),
    broken(("maps", "two", "cod"), "nope"),
    broken(("maps", "two", "matrix"), [[1, 2]]),
    broken(("maps", "two"), {"dom": "Z", "cod": "S", "matrix": [[1]]}),
])
def test_invalid_documents(data):
    with pytest.raises(FormatError):
        parse_document(data)


def test_unreadable_files(tmp_path):
    with pytest.raises(FormatError):
        load_document(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    with pytest.raises(FormatError):
        load_document(bad)


def test_unknown_names():
    with pytest.raises(FormatError):
        preset_document("local")
    with pytest.raises(FormatError):
        preset_document("klein").lattice("nope")
