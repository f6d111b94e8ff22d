"""Command-line front door.

Subcommands: gen, find, verify, hypotheses, survey.  Exit codes: 0 success,
1 input/verification error, 2 search exhausted.  The environment variable
PNONINNER_ENUM_BOUND overrides the element-enumeration bound.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .families import FAMILIES, gen_family
from .pc import PresentationError
from .presentation_io import ParseError, parse_presentation, print_presentation
from .search import (
    Certificate,
    SearchExhausted,
    find_noninner,
    fingerprint,
    verify_certificate,
)
from .structure import nilpotency_class, rank


def _load_group(path: str):
    with open(path) as fh:
        return parse_presentation(fh.read())


def cmd_gen(args) -> int:
    try:
        G = gen_family(args.family, args.p, args.n)
    except PresentationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    text = print_presentation(G)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_find(args) -> int:
    try:
        G = _load_group(args.file)
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        cert = find_noninner(G, args.fix)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except SearchExhausted as e:
        print(f"EXHAUSTED: {e}", file=sys.stderr)
        return 2
    payload = cert.to_json()
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(payload)
    print(
        f"certificate: order-{cert.order} non-inner automorphism, "
        f"strategy {cert.strategy}, fixes {cert.fix_descriptor} pointwise, "
        f"inner check exhausted over {cert.inner_space_size} candidates"
    )
    if not args.json:
        sys.stdout.write(payload)
    return 0


def cmd_verify(args) -> int:
    try:
        G = _load_group(args.file)
        with open(args.cert) as fh:
            cert = Certificate.from_json_dict(json.load(fh))
    except (OSError, ParseError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    ok, reason = verify_certificate(G, cert)
    print(("VALID" if ok else "INVALID") + f": {reason}")
    return 0 if ok else 1


def cmd_hypotheses(args) -> int:
    from .constructions import hypothesis_report, reduction_criteria

    try:
        G = _load_group(args.file)
    except (OSError, ParseError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    try:
        rep = hypothesis_report(G, args.level)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    out = {
        "level": rep.level,
        "all_hold": rep.all_hold,
        "items": {
            k: {"holds": v["holds"], "evidence": _plain(v["evidence"])}
            for k, v in rep.items.items()
        },
        "reduction_criteria": {
            k: ({"note": v["note"]} if "note" in v else {"fires": v["fires"]})
            for k, v in reduction_criteria(G).items()
        },
    }
    json.dump(out, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _plain(x):
    import numpy as np

    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _survey_one(path: str):
    from .constructions import hypothesis_report

    started = time.monotonic()
    name = os.path.basename(path)
    try:
        G = _load_group(path)
    except (OSError, ParseError) as e:
        return {"file": name, "status": "error", "error": str(e)}, None, 0
    if nilpotency_class(G) < 2:
        return (
            {"file": name, "fingerprint": fingerprint(G), "d": rank(G), "status": "abelian-skipped", "fix": ""},
            None,
            int((time.monotonic() - started) * 1000),
        )
    d = rank(G)
    cls = nilpotency_class(G)
    fix = "frattini" if (d >= 3 or cls <= 3) else "agemo-gamma3"
    rep = hypothesis_report(G, "A")
    profile = {k: v["holds"] for k, v in rep.items.items()}
    row = {
        "file": name,
        "fingerprint": fingerprint(G),
        "d": d,
        "fix": fix,
        "hypothesis_a": profile,
    }
    cert = None
    try:
        cert = find_noninner(G, fix)
        row["status"] = "certificate"
        row["strategy"] = cert.strategy
        row["certificate_sha256"] = cert.digest()
    except SearchExhausted as e:
        row["status"] = "exhausted"
        row["candidates"] = e.candidates
    wall = int((time.monotonic() - started) * 1000)
    return row, cert, wall


def cmd_survey(args) -> int:
    files = sorted(
        os.path.join(args.dir, f) for f in os.listdir(args.dir) if f.endswith(".pres")
    )
    if not files:
        print(f"error: no .pres files in {args.dir}", file=sys.stderr)
        return 1
    rows = []
    certs = {}
    timings = {}
    if args.jobs > 1:
        import multiprocessing as mp

        with mp.Pool(args.jobs) as pool:
            results = pool.map(_survey_one, files)
    else:
        results = [_survey_one(f) for f in files]
    for (row, cert, wall) in results:
        rows.append(row)
        timings[row["file"]] = wall
        if cert is not None:
            certs[cert.digest()] = cert
    cert_dir = args.certs or (os.path.splitext(args.report)[0] + "_certs")
    os.makedirs(cert_dir, exist_ok=True)
    for digest, cert in sorted(certs.items()):
        with open(os.path.join(cert_dir, f"{digest}.json"), "w") as fh:
            fh.write(cert.to_json())
    for row in rows:
        if "certificate_sha256" in row:
            row["certificate_file"] = row["certificate_sha256"] + ".json"

    report = {
        "format": "pnoninner-survey/1",
        "certificate_dir": os.path.relpath(cert_dir, os.path.dirname(os.path.abspath(args.report))),
        "rows": rows,
        "timings_ms": timings,
    }
    with open(args.report, "w") as fh:
        json.dump(report, fh, indent=2)
        fh.write("\n")
    if args.csv:
        from .report import write_survey_csv

        write_survey_csv(report, args.csv)
    if args.figures:
        from .report import render_survey_figures

        render_survey_figures(report, args.figures)
    bad = [r for r in rows if r["status"] in ("exhausted", "error")]
    print(
        f"survey: {len(rows)} groups, {sum(r['status'] == 'certificate' for r in rows)} certified, "
        f"{len(bad)} problem rows -> {args.report}"
    )
    return 2 if any(r["status"] == "exhausted" for r in rows) else 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="pnoninner", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="write a built-in family presentation")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--n", type=int, default=None)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(fn=cmd_gen)

    f = sub.add_parser("find", help="find and certify a non-inner automorphism of order p")
    f.add_argument("file")
    f.add_argument("--fix", choices=["frattini", "agemo-gamma3", "agemo-gamma4"], default="frattini")
    f.add_argument("--json", default=None, help="write the certificate JSON here")
    f.set_defaults(fn=cmd_find)

    v = sub.add_parser("verify", help="re-verify a certificate from scratch")
    v.add_argument("file")
    v.add_argument("cert")
    v.set_defaults(fn=cmd_verify)

    h = sub.add_parser("hypotheses", help="evaluate the hypothesis battery")
    h.add_argument("file")
    h.add_argument("--level", choices=["A", "B"], default="A")
    h.set_defaults(fn=cmd_hypotheses)

    s = sub.add_parser("survey", help="run find over a directory of presentations")
    s.add_argument("dir")
    s.add_argument("--report", required=True)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--csv", default=None)
    s.add_argument("--figures", default=None)
    s.add_argument("--certs", default=None)
    s.set_defaults(fn=cmd_survey)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
