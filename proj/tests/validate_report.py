#!/usr/bin/env python3
"""Validates design reports against the in-repo schema and checks cross-references."""
import json
import sys

import jsonschema


def check_consistency(report):
    opt = report["optimization"]
    if report["status"] == "ok":
        assert report["error"] is None, "ok report carries an error"
        assert opt is not None, "ok report lacks optimization"
    else:
        assert report["error"] is not None, "failed report lacks error"
        return
    selected = [g["param"] for g in opt["selected"]]
    assert opt["cardinality"] == len(selected)
    assert len(opt["problem"]["params"]) == opt["param_count"]
    covered = set()
    for i, a in enumerate(opt["assignment"]):
        assert a["param"] in selected, "assignment references an unselected gripper"
        assert selected[a["gripper"]] == a["param"]
        assert opt["problem"]["matrix"][i][a["param"]] == 1, "assignment without coverage"
        covered.add(a["param"])
    assert covered == set(selected), "a selected gripper covers no component"
    actives = {c["id"] for c in report["components"] if c["role"] == "active"}
    assert {a["component"] for a in opt["assignment"]} == actives, "not every active component is assigned"


def main(argv):
    with open(argv[1]) as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    for path in argv[2:]:
        with open(path) as f:
            report = json.load(f)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for e in errors:
            print(f"{path}: {'/'.join(map(str, e.path))}: {e.message}")
        if errors:
            return 1
        check_consistency(report)
        print(f"{path}: valid ({report['status']})")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
