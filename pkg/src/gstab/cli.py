"""Scenario-driven command line front end.

Subcommands:

* ``gstab models list`` - show the built-in category models,
* ``gstab run scenario.json [--out report.json]`` - execute the analyses a
  scenario requests and write a byte-stable JSON report (plus optional CSV),
* ``gstab check acceptance [--out report.json]`` - run the acceptance suite
  and print one pass/fail line per criterion.

Exit codes: 0 success, 1 an analysis failed, 2 unusable input (parse error,
unknown model or reference).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import acceptance, jsonutil
from .completion import (
    CauchySequencePath,
    evaluate,
    injectivity_probe,
    is_pi_local,
    j_map,
    limiting_support,
    massless_subcategory,
    sequence_from_json,
)
from .geometry import ChargeSpace, charge_distance, stab_distance
from .models import DGObject, load_model
from .stability import (
    StabilityCondition,
    bridgeland_distance,
    hn_filtration,
    mass,
    slicing_distance,
)


class ScenarioError(ValueError):
    pass


ANALYSES = (
    "hn",
    "mass",
    "distances",
    "k_sigma",
    "support",
    "j",
    "injectivity",
    "example_a1",
    "example_a2_remark",
    "mass_profile",
)


def mass_profile(seq: CauchySequencePath, obj: DGObject, ns):
    """Rows (n, mass of the object at index n) plus a tail monotonicity flag."""
    rows = []
    for n in ns:
        rows.append((int(n), mass(evaluate(seq, int(n)), obj)))
    tail = [m for _, m in rows[len(rows) // 2 :]]
    monotone = all(b <= a + 1e-12 for a, b in zip(tail, tail[1:]))
    return rows, monotone


def _load_scenario(path: Path) -> dict:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ScenarioError(f"cannot read scenario: {exc}") from exc
    if not isinstance(data, dict) or "model" not in data:
        raise ScenarioError("scenario must be an object with a 'model' field")
    return data


def _resolve(env: dict, kind: str, name):
    table = env[kind]
    if name not in table:
        raise ScenarioError(f"unknown {kind[:-1]} reference {name!r}")
    return table[name]


def _distance_records(env, spec):
    kinds = spec.get("kinds", ["bridgeland", "slicing", "charge", "stab"])
    rows = []
    for a, b in spec.get("pairs", []):
        sa = _resolve(env, "stability_conditions", a)
        sb = _resolve(env, "stability_conditions", b)
        for kind in kinds:
            if kind == "bridgeland":
                lo = hi = bridgeland_distance(sa, sb)
            elif kind == "slicing":
                lo = hi = slicing_distance(sa, sb)
            elif kind == "charge":
                lo = hi = charge_distance(ChargeSpace.of(sa.model), sa.charge, sb.charge,
                                          env["norm"])
            elif kind == "stab":
                interval = stab_distance(sa, sb, env["norm"])
                lo, hi = interval.lower, interval.upper
            else:
                raise ScenarioError(f"unknown distance kind {kind!r}")
            rows.append({"pair": [a, b], "kind": kind, "lower": lo, "upper": hi})
    return rows


def _run_analysis(env, spec):
    kind = spec.get("analysis")
    if kind not in ANALYSES:
        raise ScenarioError(f"unknown analysis {kind!r}")
    if kind == "hn":
        sigma = _resolve(env, "stability_conditions", spec["sigma"])
        obj = DGObject.from_json(spec["object"])
        hn = hn_filtration(sigma, obj)
        return {"analysis": kind, "sigma": spec["sigma"], "object": obj.to_json(),
                "factors": hn.to_json()}
    if kind == "mass":
        sigma = _resolve(env, "stability_conditions", spec["sigma"])
        obj = DGObject.from_json(spec["object"])
        return {"analysis": kind, "sigma": spec["sigma"], "object": obj.to_json(),
                "mass": mass(sigma, obj)}
    if kind == "distances":
        rows = _distance_records(env, spec)
        record = {"analysis": kind, "rows": rows}
        if "csv" in spec:
            text = jsonutil.csv_lines(
                ["a", "b", "kind", "lower", "upper"],
                [(r["pair"][0], r["pair"][1], r["kind"], r["lower"], r["upper"]) for r in rows],
            )
            env["files"][spec["csv"]] = text
            record["csv"] = spec["csv"]
        return record
    if kind == "k_sigma":
        seq = _resolve(env, "sequences", spec["sequence"])
        node = massless_subcategory(seq)
        return {"analysis": kind, "sequence": spec["sequence"], "K": node.to_json(),
                "pi_local": is_pi_local(seq).pi_local}
    if kind == "support":
        seq = _resolve(env, "sequences", spec["sequence"])
        c, holds = limiting_support(seq, env["norm"])
        return {"analysis": kind, "sequence": spec["sequence"], "C": c, "holds": holds}
    if kind == "j":
        seq = _resolve(env, "sequences", spec["sequence"])
        image = j_map(seq, env["norm"])
        return {"analysis": kind, "sequence": spec["sequence"], "image": image.to_json()}
    if kind == "injectivity":
        names = spec["sequences"]
        seqs = [_resolve(env, "sequences", n) for n in names]
        report = injectivity_probe(seqs, env["norm"])
        payload = report.to_json()
        payload["classes"] = [[names[i] for i in cls] for cls in report.classes]
        return {"analysis": kind, "sequences": names, "report": payload}
    if kind == "example_a1":
        report = acceptance.example_a1_report()
        return {"analysis": kind, "report": report}
    if kind == "example_a2_remark":
        report = acceptance.example_a2_remark_report()
        return {"analysis": kind, "report": report}
    if kind == "mass_profile":
        seq = _resolve(env, "sequences", spec["sequence"])
        obj = DGObject.from_json(spec["object"])
        ns = spec.get("n") or list(range(seq.n0, seq.n0 + 100))
        rows, monotone = mass_profile(seq, obj, ns)
        record = {"analysis": kind, "sequence": spec["sequence"], "object": obj.to_json(),
                  "samples": len(rows), "tail_monotone": monotone}
        if "csv" in spec:
            env["files"][spec["csv"]] = jsonutil.csv_lines(["n", "mass"], rows)
            record["csv"] = spec["csv"]
        return record
    raise ScenarioError(f"unhandled analysis {kind!r}")


def run_scenario(path, out_path=None):
    """Execute a scenario file; returns (exit_code, report dict)."""
    path = Path(path)
    data = _load_scenario(path)
    model = load_model(data["model"])
    env = {
        "model": model,
        "norm": data.get("norm"),
        "stability_conditions": {},
        "sequences": {},
        "files": {},
    }
    for name, sj in (data.get("stability_conditions") or {}).items():
        env["stability_conditions"][name] = StabilityCondition.from_json(model, sj)
    for name, qj in (data.get("sequences") or {}).items():
        env["sequences"][name] = sequence_from_json(model, qj)
    analyses = data.get("analyses") or []

    # resolve every reference up front so bad names fail before any analysis
    for spec in analyses:
        kind = spec.get("analysis")
        if kind not in ANALYSES:
            raise ScenarioError(f"unknown analysis {kind!r}")
        for key, table in (("sigma", "stability_conditions"), ("sequence", "sequences")):
            if key in spec:
                _resolve(env, table, spec[key])
        for name in spec.get("sequences", []) if kind == "injectivity" else []:
            _resolve(env, "sequences", name)
        for pair in spec.get("pairs", []) if kind == "distances" else []:
            for name in pair:
                _resolve(env, "stability_conditions", name)

    records = []
    failed = False
    for spec in analyses:
        try:
            records.append(_run_analysis(env, spec))
        except ScenarioError:
            raise
        except Exception as exc:
            failed = True
            records.append({"analysis": spec.get("analysis"), "error": str(exc)})
    report = {"model": model.model_id, "analyses": records, "ok": not failed}
    target = out_path or data.get("out")
    text = jsonutil.dumps(report)
    if target:
        Path(target).write_text(text)
    else:
        sys.stdout.write(text)
    base = Path(target).parent if target else path.parent
    for name, content in env["files"].items():
        dest = Path(name)
        if not dest.is_absolute():
            dest = base / dest
        dest.write_text(content)
    return (1 if failed else 0), report


def _cmd_models(args) -> int:
    print("a1_cyn:<N>   one N-spherical generator S, lattice rank 1 (integer N >= 2)")
    print("a2_path      A2 quiver path algebra: simples S1, S2, extension E, rank 2")
    return 0


def _cmd_run(args) -> int:
    try:
        code, _ = run_scenario(args.scenario, args.out)
    except (ScenarioError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # unknown model, malformed sequence data, ...
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return code


def _cmd_check(args) -> int:
    if args.suite != "acceptance":
        print(f"error: unknown suite {args.suite!r}", file=sys.stderr)
        return 2
    records = acceptance.run_all()
    width = max(len(r["description"]) for r in records)
    for r in records:
        flag = "PASS" if r["passed"] else "FAIL"
        print(f"{r['id']}  {flag}  {r['seconds']:7.3f}s  {r['description']:<{width}}")
    if args.out:
        Path(args.out).write_text(jsonutil.dumps(records))
    return 0 if all(r["passed"] for r in records) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="gstab")
    sub = parser.add_subparsers(dest="command", required=True)

    p_models = sub.add_parser("models", help="list the built-in category models")
    p_models.add_argument("action", choices=["list"])
    p_models.set_defaults(func=_cmd_models)

    p_run = sub.add_parser("run", help="run a scenario file")
    p_run.add_argument("scenario")
    p_run.add_argument("--out", default=None, help="write the JSON report here")
    p_run.set_defaults(func=_cmd_run)

    p_check = sub.add_parser("check", help="run a built-in suite")
    p_check.add_argument("suite", choices=["acceptance"])
    p_check.add_argument("--out", default=None, help="write the JSON records here")
    p_check.set_defaults(func=_cmd_check)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
