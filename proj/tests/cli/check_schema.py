"""Run every metrik subcommand and validate its report against the schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    binary = str(Path(sys.argv[1]).resolve())
    schema_path = sys.argv[2]
    schema = json.loads(Path(schema_path).read_text())
    validator = jsonschema.Draft202012Validator(schema)

    with tempfile.TemporaryDirectory() as tmp:
        work = Path(tmp)

        def run(*args: str) -> dict:
            proc = subprocess.run([binary, *args], cwd=work, capture_output=True, text=True)
            report = json.loads(proc.stdout)
            if report.get("exit_code") != proc.returncode:
                raise AssertionError(f"{args}: exit {proc.returncode} vs report {report.get('exit_code')}")
            return report

        generated = []

        def gen(name: str, *args: str) -> str:
            report = run(*args)
            generated.append((list(args), report))
            (work / name).write_text(json.dumps(report))
            return name

        broom = gen("broom.json", "gen", "broom", "--n", "6")
        broom_graph = gen("bg.json", "gen", "broom", "--n", "6", "--format", "graph")
        tips = gen("tips.json", "gen", "broom", "--n", "30", "--sequence", "harmonic", "--format", "curve")
        heis = gen("h.json", "gen", "heisenberg", "--steps", "50")
        laakso_graph = gen("lg.json", "gen", "laakso", "--level", "2", "--format", "graph")
        laakso_x = gen("lx.json", "gen", "laakso", "--level", "4", "--sra-points", "4")
        (work / "zig.json").write_text('{"coords": [[0,0],[2,0],[0.5,0]], "norm": "l2"}')
        (work / "line.json").write_text('{"coords": [[0],[1],[2],[3]], "norm": "l1"}')

        commands = [
            ["validate", broom],
            ["sra", "check", broom, "--alpha", "0.5", "--subset", "tips"],
            ["sra", "check", laakso_x, "--alpha", "0.6"],
            ["sra", "check", broom, "--alpha", "0.5"],
            ["sra", "max", broom, "--alpha", "0.5"],
            ["sra", "max", broom, "--alpha", "0.5", "--greedy"],
            ["angle", broom, "r", "y1", "y2", "--alpha", "0.5"],
            ["beta", "--epsilon", "0.3"],
            ["bound", "n-of-l", "--l", "3"],
            ["bound", "n-of-l", "--l", "4"],
            ["bound", "ntilde", "--alpha", "0.6"],
            ["bound", "ramsey", "30", "40"],
            ["doubling", broom],
            ["separated", broom, "--r", "0.5"],
            ["atb", "point", broom, "--center", "r", "--epsilon", "0.5", "--L", "3"],
            ["atb", "star", broom_graph, "--center", "r", "--epsilon", "0.5", "--targets", "y1,y2"],
            ["atb", "calemma", "--dim", "2", "--epsilon", "0.5", "--trials", "100", "--seed", "1"],
            ["lrb", laakso_graph, "--center", "r", "--horizon", "1"],
            ["curve", "check", "zig.json"],
            ["curve", "check", heis],
            ["curve", "length", heis, "--prefixes"],
            ["curve", "extract-sra", tips, "--alpha", "0.6", "--size", "5"],
            ["curve", "extract-sra", "line.json", "--alpha", "0.6", "--size", "3"],
            ["descend", "--objective", "half-sq-norm", "--dim", "2", "--start", "1,1"],
            ["descend", "--objective", "quadratic", "--matrix", "3,1;1,2", "--dim", "2",
             "--start", "1,-1", "--norm", "linf"],
            ["quasiconvex", "--objective", "sin-x1", "--dim", "2", "--seed", "3"],
            ["quasiconvex", "--objective", "half-sq-norm", "--dim", "2", "--seed", "3"],
            ["gen", "laakso", "--level", "2"],
            ["gen", "heisenberg", "--steps", "3", "--format", "space"],
            ["gen", "cayley", "--generators", "1,0;0,1", "--radius", "1"],
            ["gen", "sample", "--dim", "2", "--count", "3", "--seed", "1"],
            ["stable-norm", "--generators", "1,0;0,1", "--g", "1,1"],
            ["frobnicate"],
            ["atb", "calemma", "--dim", "2", "--epsilon", "0.5"],
            ["validate", "missing.json"],
        ]

        failures = 0
        seen = set()
        results = generated + [(cmd, run(*cmd)) for cmd in commands]
        for cmd, report in results:
            if report["subcommand"]:
                seen.add(report["subcommand"])
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            status = "ok" if not errors else "INVALID"
            print(f"{status:8} {report['verdict']:10} {' '.join(cmd)}")
            for err in errors:
                failures += 1
                print(f"    {list(err.path)}: {err.message}")
        print(f"{len(results)} reports, {len(seen)} distinct subcommands, {failures} schema errors")
        return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
