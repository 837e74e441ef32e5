#!/usr/bin/env python3
# SPDX-License-Identifier: MIT
"""Validate every report the CLI emits for the test corpus against the schema.

usage: validate_schema.py DAYWATCH SCHEMA DATA_DIR

Runs `run` on each corpus file and a `sweep` on the baseline, checks each
report against the JSON schema and checks that object keys come out in the
order the schema lists them.
"""

import json
import pathlib
import subprocess
import sys

import jsonschema


def key_order_errors(node, schema, root, path="$"):
    if "$ref" in schema:
        ref = schema["$ref"].split("/")[-1]
        return key_order_errors(node, root["$defs"][ref], root, path)
    errors = []
    if isinstance(node, list) and "items" in schema:
        for i, item in enumerate(node):
            errors += key_order_errors(item, schema["items"], root, f"{path}[{i}]")
    if isinstance(node, list) and node and isinstance(node[0], tuple):
        keys = [k for k, _ in node]
        want = schema.get("required", [])
        if keys != want:
            errors.append(f"{path}: key order {keys} != {want}")
        for k, v in node:
            sub = schema.get("properties", {}).get(k)
            if sub is not None:
                errors += key_order_errors(v, sub, root, f"{path}.{k}")
    return errors


def pairs(text):
    return json.loads(text, object_pairs_hook=lambda kv: kv)


def run(cmd):
    res = subprocess.run(cmd, capture_output=True, text=True)
    if res.returncode not in (0, 2):
        sys.exit(f"{' '.join(cmd)} exited {res.returncode}: {res.stderr}")
    return res.stdout


def main():
    cli, schema_path, data_dir = sys.argv[1:4]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    data = pathlib.Path(data_dir)

    outputs = []
    for name in ("baseline.csv", "corpus.csv", "corpus.json"):
        for mode in ("strict", "absolute"):
            out = run([cli, "run", "--input", str(data / name), "--output", "json",
                       "--up-log-mode", mode])
            outputs += [(f"{name}[{i}] {mode}", r, p)
                        for i, (r, p) in enumerate(zip(json.loads(out), pairs(out)))]
    out = run([cli, "sweep", "--input", str(data / "baseline.csv"), "--param", "delta",
               "--from", "0", "--to", "1", "--steps", "11"])
    sweep, sweep_pairs = json.loads(out), pairs(out)
    entry_pairs = dict(sweep_pairs)["entries"]
    for i, entry in enumerate(sweep["entries"]):
        if entry["report"] is not None:
            outputs.append((f"sweep[{i}]", entry["report"], dict(entry_pairs[i])["report"]))

    failures = 0
    for label, report, ordered in outputs:
        problems = [e.message for e in validator.iter_errors(report)]
        problems += key_order_errors(ordered, schema, schema)
        for p in problems:
            print(f"FAIL {label}: {p}")
        failures += bool(problems)
    print(f"{len(outputs) - failures}/{len(outputs)} reports valid")
    return 1 if failures or not outputs else 0


if __name__ == "__main__":
    sys.exit(main())
