"""Run the CLI with --json and validate each document against docs/schemas."""
import json
import pathlib
import subprocess
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

CASES = [
    ("trop-series", ["trop-series", "1 + t^3", "t - t^2 ; O(t^4)", "0"], 0),
    ("tropicalize", ["tropicalize", "x1'' - t"], 0),
    ("eval", ["eval", "-p", "x1*x2' + t", "-s", "1 + t", "-s", "t^2 ; O(t^6)"], 0),
    ("trop-eval", ["trop-eval", "-p", "1 (*) x1' (+) 2 (*) x1^(3) (+) 3", "-S", "{2,3}"], 0),
    ("check", ["check", "-p", "trop(x1'' - t)", "-S", "{2}"], 1),
    ("enumerate", ["enumerate", "-H", "trop(x1'' - t)", "-N", "4", "--tail"], 0),
    ("jets", ["jets", "-g", "x1*x1'", "-g", "x2'' - t*x1", "-m", "2"], 0),
    ("jet-witness", ["jet-witness", "-g", "x1'' - t", "-S", "{3}", "-m", "2"], 0),
    ("jet-witness", ["jet-witness", "-g", "x1'' - t", "-S", "{2}", "-m", "2"], 1),
    ("verify-ft", ["verify-ft", "-g", "x1'' - t", "-f", "c1 + c2*t + 1/6*t^3", "-N", "4", "-K", "0"], 1),
    ("verify-ft", ["verify-ft", "-g", "x1' - x2", "-g", "x2'", "-f", "a + b*t", "-f", "b", "-N", "3", "-K", "2"], None),
    ("error", ["tropicalize", "x1 + * x1'"], 2),
    ("error", ["--cap", "10", "enumerate", "-H", "x1 (+) x2", "-N", "5"], 2),
]


def main():
    cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.stem: json.loads(p.read_text()) for p in schema_dir.glob("*.json")}
    registry = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in schemas.values())
    failed = 0
    for name, args, code in CASES:
        proc = subprocess.run([cli, "--json", *args], capture_output=True, text=True)
        label = " ".join(args)
        if code is not None and proc.returncode != code:
            print(f"FAIL {label}: exit {proc.returncode}, expected {code}\n{proc.stderr}")
            failed += 1
            continue
        try:
            doc = json.loads(proc.stdout)
        except json.JSONDecodeError as e:
            print(f"FAIL {label}: not JSON ({e})")
            failed += 1
            continue
        errors = list(Draft202012Validator(schemas[name], registry=registry).iter_errors(doc))
        for e in errors:
            print(f"FAIL {label}: {e.json_path}: {e.message}")
        failed += bool(errors)
        if not errors:
            print(f"ok   {label}")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
