"""Run every subcommand and validate its JSON artifact against the shipped schemas."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

tool, schema_dir, primes = sys.argv[1], pathlib.Path(sys.argv[2]), sys.argv[3]

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
registry = Registry().with_resources(
    (name, Resource.from_contents(s)) for name, s in schemas.items())

runs = [
    ["gen", "--primes-file", primes, "--limit", "200"],
    ["conditions", "--classical", "50", "--limit", "200", "--condition", "BC"],
    ["conditions", "--classical", "50", "--limit", "200", "--condition", "LC"],
    ["conditions", "--classical", "50", "--limit", "200", "--condition", "NC", "--count", "5"],
    ["zeta", "--classical", "100", "--limit", "300", "--envelope", "rs", "--t", "3"],
    ["zeta", "--classical", "100", "--sigma", "0.8"],
    ["perturb", "--classical", "10"],
    ["sample", "--seed", "7", "--count", "60", "--sweep", "20,2,4"],
    ["dioph", "--target", "sqrt(2)", "--limit", "3000"],
    ["dioph", "--target", "3/2", "--limit", "100"],
    ["helson", "--count", "30", "--limits", "10,100"],
]
failures = 0
for args in runs:
    proc = subprocess.run([tool, *args], capture_output=True, text=True)
    if proc.returncode != 0:
        print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        continue
    doc = json.loads(proc.stdout)
    validator = jsonschema.Draft202012Validator(schemas[f"{args[0]}.schema.json"], registry=registry)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
    for e in errors[:5]:
        print(f"FAIL {' '.join(args)}: {list(e.path)}: {e.message[:200]}")
    failures += bool(errors)
    if not errors:
        print(f"ok   {' '.join(args)}")
    broken = json.loads(proc.stdout)
    broken["manifest"]["command"] = "replay"
    if validator.is_valid(broken):
        print(f"FAIL {' '.join(args)}: schema accepts a wrong command")
        failures += 1
sys.exit(1 if failures else 0)
