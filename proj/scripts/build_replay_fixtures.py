#!/usr/bin/env python3
# Copyright 2026 The Scenario Forge Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Rebuilds fixtures/replay from fixtures/replay_manifest.json.

Each manifest entry names a pipeline, a requirement file and the authored response(s).
The replay key of every prompt is computed by the scenario_forge binary itself, so the
fixtures always match the shipped templates. Run this after editing any prompt template
or example file.
"""

import argparse
import json
import pathlib
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def prompt_key(binary, data_dir, pipeline, requirements, style, scene=None, seed=None):
    cmd = [str(binary), "--data-dir", str(data_dir), "prompt", pipeline, str(requirements),
           "--style", style, "--key-only"]
    if scene is not None:
        cmd += ["--scene", str(scene)]
    if seed is not None:
        cmd += ["--shuffle", "--seed", str(seed)]
    return subprocess.run(cmd, check=True, capture_output=True, text=True).stdout.strip()


def subset_file(requirements, ids, tmp):
    wanted = set(ids)
    lines = [line for line in requirements.read_text().splitlines()
             if line.strip() and int(line.split("]")[0].lstrip("[")) in wanted]
    path = pathlib.Path(tmp) / ("subset_" + "_".join(map(str, ids)) + ".txt")
    path.write_text("\n".join(lines) + "\n")
    return path


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--binary", default=str(ROOT / "build" / "tools" / "scenario_forge"))
    parser.add_argument("--data-dir", default=str(ROOT))
    parser.add_argument("--check", action="store_true",
                        help="verify the existing fixtures instead of rewriting them")
    args = parser.parse_args()

    fixtures = pathlib.Path(args.data_dir) / "fixtures"
    manifest = json.loads((fixtures / "replay_manifest.json").read_text())
    wanted = {}
    with tempfile.TemporaryDirectory() as tmp:
        for entry in manifest:
            requirements = fixtures / entry["requirements"]
            if "ids" in entry:
                requirements = subset_file(requirements, entry["ids"], tmp)
            scene = fixtures / entry["scene"] if "scene" in entry else None
            for style in entry["styles"]:
                if "response" in entry:
                    key = prompt_key(args.binary, args.data_dir, entry["pipeline"], requirements,
                                     style, scene)
                    wanted[f"{key}.txt"] = (fixtures / entry["response"]).read_text()
                    continue
                for index, response in enumerate(entry["attempts"]):
                    seed = entry["shuffle_seed"] + index if "shuffle_seed" in entry else None
                    key = prompt_key(args.binary, args.data_dir, entry["pipeline"], requirements,
                                     style, scene, seed)
                    wanted[f"{key}.{index}.txt"] = (fixtures / response).read_text()

    replay = fixtures / "replay"
    existing = {p.name: p.read_text() for p in replay.glob("*.txt")}
    if args.check:
        if existing != wanted:
            stale = sorted(set(existing) ^ set(wanted)) or sorted(
                k for k in wanted if existing.get(k) != wanted[k])
            print("replay fixtures are out of date: " + ", ".join(stale[:5]), file=sys.stderr)
            return 1
        print(f"{len(wanted)} replay fixtures up to date")
        return 0
    replay.mkdir(parents=True, exist_ok=True)
    for name in set(existing) - set(wanted):
        (replay / name).unlink()
    for name, text in sorted(wanted.items()):
        (replay / name).write_text(text)
    print(f"wrote {len(wanted)} replay fixtures to {replay}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
