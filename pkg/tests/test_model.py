from __future__ import annotations

import json

import pytest

from secrate.model import (
    ProjectError,
    Relation,
    load_project,
    loads_project,
    validate_project,
)

from conftest import DEMO_PROJECT


def _minimal_dict(n: int = 3, m: int = 3) -> dict:
    return {
        "characteristics": [
            {"id": f"c{i}", "name": f"c{i}", "unit": "",
             "x": {"min": 0, "av": 5, "max": 10},
             "g": {"min": 1, "av": 2, "max": 3}}
            for i in range(1, n + 1)
        ],
        "experts": [f"e{j}" for j in range(1, m + 1)],
    }


def test_minimal_project_loads():
    project = loads_project(json.dumps(_minimal_dict(3, 3)))
    assert project.n == 3
    assert len(project.experts) == 3
    assert project.ranks is None
    assert project.systems == ()


def test_degenerate_x_range_names_characteristic():
    data = _minimal_dict()
    data["characteristics"][1]["x"] = {"min": 5, "av": 5, "max": 5}
    with pytest.raises(ProjectError, match="'c2'"):
        loads_project(json.dumps(data))


def test_dangling_expert_reference():
    data = _minimal_dict()
    data["judgments"] = [{"expert": "ghost", "left": "c1", "right": "c2", "relation": ">"}]
    with pytest.raises(ProjectError, match="ghost"):
        loads_project(json.dumps(data))


def test_parse_error_reports_position():
    with pytest.raises(ProjectError, match=r"line \d+"):
        loads_project("{\n  \"characteristics\": [,]\n}")


def test_missing_file():
    with pytest.raises(ProjectError, match="cannot read"):
        load_project("/nonexistent/project.json")


def test_validate_clean_project_is_empty():
    project = loads_project(json.dumps(_minimal_dict()))
    assert validate_project(project) == []


def test_validate_is_pure():
    project = load_project(DEMO_PROJECT)
    assert validate_project(project) == validate_project(project)
    assert validate_project(project) == []


def test_comprehensive_needs_three_characteristics():
    data = _minimal_dict(n=2)
    data["config"] = {"methods": ["comprehensive"]}
    data["systems"] = [{"id": "s1", "intervals": {"c1": [0, 10], "c2": [0, 10]}}]
    data["judgments"] = [
        {"expert": "e1", "left": "c1", "right": "c2", "relation": ">"}]
    project = loads_project(json.dumps(data), strict=False)
    problems = validate_project(project)
    assert any("comprehensive method requires N >= 3" in p for p in problems)


def test_duplicated_rank_names_expert_and_rank():
    data = _minimal_dict()
    data["ranks"] = {
        "e1": {"c1": 1, "c2": 2, "c3": 3},
        "e2": {"c1": 2, "c2": 2, "c3": 3},
    }
    project = loads_project(json.dumps(data), strict=False)
    problems = validate_project(project)
    assert any("'e2'" in p and "rank 2" in p for p in problems)


def test_unknown_relation_symbol():
    data = _minimal_dict()
    data["judgments"] = [{"expert": "e1", "left": "c1", "right": "c2", "relation": "!"}]
    with pytest.raises(ProjectError, match="relation"):
        loads_project(json.dumps(data))


def test_relation_aliases():
    assert Relation.parse("greater") is Relation.GREATER
    assert Relation.parse("<") is Relation.LESS
    assert Relation.parse("EQ") is Relation.EQUAL


def test_interval_outside_global_range():
    data = _minimal_dict()
    data["systems"] = [{"id": "s1", "intervals": {"c1": [0, 12]}}]
    project = loads_project(json.dumps(data), strict=False)
    problems = validate_project(project)
    assert any("outside the global range" in p for p in problems)


def test_membership_outside_unit_interval():
    data = _minimal_dict()
    data["systems"] = [{"id": "s1", "intervals": {"c1": [0, 10]},
                        "memberships": {"req-a": 1.5}}]
    project = loads_project(json.dumps(data), strict=False)
    assert any("membership 1.5" in p for p in validate_project(project))


def test_threshold_band_enforced():
    data = _minimal_dict()
    data["config"] = {"threshold": 0.9}
    project = loads_project(json.dumps(data), strict=False)
    assert any("threshold" in p for p in validate_project(project))


def test_duplicate_judgment_pair_per_expert():
    data = _minimal_dict()
    data["judgments"] = [
        {"expert": "e1", "left": "c1", "right": "c2", "relation": ">"},
        {"expert": "e1", "left": "c2", "right": "c1", "relation": "<"},
    ]
    project = loads_project(json.dumps(data), strict=False)
    assert any("more than once" in p for p in validate_project(project))


def test_roundtrip_through_serialization():
    project = load_project(DEMO_PROJECT)
    text = json.dumps(project.to_dict())
    again = loads_project(text)
    assert again == project


def test_roundtrip_preserves_rank_table_and_config():
    project = load_project(DEMO_PROJECT)
    again = loads_project(json.dumps(project.to_dict()))
    assert again.ranks == project.ranks
    assert again.config == project.config
    assert again.characteristic_ids == project.characteristic_ids
