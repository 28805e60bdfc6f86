"""Run lcu_lab once per subcommand and validate every report against docs/report.schema.json."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

RUNS = [
    ["hamsim", "--seed", "7"],
    ["gsp", "--repetitions", "2000"],
    ["gsp", "--imperfect", "--repetitions", "2000"],
    ["qls", "--repetitions", "2000"],
    ["analog-gsp"],
    ["analog-qls"],
    ["walks-search", "--trials", "50", "--graph", "cycle:6"],
    ["walks-search", "--trials", "50", "--graph", "complete:5", "--algo", "2"],
    ["decomp-check"],
    ["decomp-check", "--kind", "inverse", "--eps", "0.01"],
    ["decomp-check", "--kind", "taylor"],
    ["sweep", "--values", "0.25,0.5"],
]


def main() -> int:
    tool, schema_path = sys.argv[1], sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, args in enumerate(RUNS):
            out = Path(tmp) / f"r{i}.json"
            proc = subprocess.run([tool, *args, "--out", str(out)], capture_output=True, text=True)
            if proc.returncode != 0:
                print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            errors = sorted(validator.iter_errors(json.loads(out.read_text())), key=str)
            if errors:
                print(f"FAIL {' '.join(args)}: {errors[0].message}")
                failures += 1
            else:
                print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
