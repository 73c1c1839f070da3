"""Validates emitted certificates and reports, and the shipped scenario files, against the schemas."""
import json
import pathlib
import sys

import jsonschema


def main() -> int:
    schemas, emitted, scenarios = (pathlib.Path(p) for p in sys.argv[1:4])
    load = lambda p: json.loads(p.read_text())
    validators = {
        name: jsonschema.Draft202012Validator(load(schemas / f"{name}.schema.json"))
        for name in ("certificate", "report", "scene", "schedule")
    }
    jobs = [(p, "certificate") for p in sorted(emitted.glob("*.cert.json"))]
    jobs += [(p, "report") for p in sorted(emitted.glob("*.report.json"))]
    jobs += [(p, "scene") for p in sorted(scenarios.glob("*.scene.json"))]
    jobs += [(p, "schedule") for p in sorted(scenarios.glob("*.schedule.json"))]
    if not any(kind == "certificate" for _, kind in jobs) or not any(kind == "report" for _, kind in jobs):
        print("no emitted certificates or reports found in", emitted)
        return 1
    bad = 0
    for path, kind in jobs:
        errors = sorted(validators[kind].iter_errors(load(path)), key=lambda e: list(e.path))
        for e in errors[:5]:
            print(f"{path.name}: {'/'.join(map(str, e.path))}: {e.message}")
        bad += bool(errors)
        print(f"{path.name}: {kind} {'FAIL' if errors else 'ok'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
