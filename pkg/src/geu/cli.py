"""Command-line client for the decision-theory service.

By default commands run in-process against the same handlers the HTTP
service exposes; ``--server URL`` sends the identical request to a running
instance instead.  Exit codes: 0 ok, 1 property failure, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import render
from .exceptions import GeuError
from .service import (CheckRequest, DocumentRequest, EvalRequest, FuzzRequest,
                      LotteryConstructRequest, RepresentRequest, handle_aa_eval,
                      handle_aa_flatten, handle_check, handle_eval, handle_fuzz,
                      handle_lottery_construct, handle_lottery_induce,
                      handle_represent)

_ROUTES = {
    "eval": ("/eval", handle_eval, EvalRequest, render.render_eval),
    "represent": ("/represent", handle_represent, RepresentRequest, render.render_represent),
    "check": ("/check", handle_check, CheckRequest, render.render_check),
    "lottery-induce": ("/lottery/induce", handle_lottery_induce, DocumentRequest,
                       render.render_induce),
    "lottery-construct": ("/lottery/construct", handle_lottery_construct,
                          LotteryConstructRequest, render.render_construct),
    "aa-flatten": ("/aa/flatten", handle_aa_flatten, DocumentRequest, render.render_flatten),
    "aa-eval": ("/aa/eval", handle_aa_eval, DocumentRequest, render.render_eval),
    "fuzz": ("/fuzz", handle_fuzz, FuzzRequest, render.render_fuzz),
}


def _load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise GeuError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise GeuError(f"{path}: line {e.lineno}: {e.msg}") from None


def _dispatch(route: str, payload: dict, server: str | None) -> dict:
    path, handler, request_type, _ = _ROUTES[route]
    if server:
        import httpx
        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
        if resp.status_code == 422:
            detail = resp.json().get("detail", {})
            message = detail.get("message", resp.text) if isinstance(detail, dict) else str(detail)
            raise GeuError(message)
        resp.raise_for_status()
        return resp.json()
    return handler(request_type.model_validate(payload)).model_dump()


def _emit(data: dict, renderer, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(renderer(data))


def _result_code(route: str, data: dict) -> int:
    if route == "check":
        return 0 if data["verdict"] else 1
    if not data.get("ok", True):
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geu",
        description="Evaluate decision rules, build generalized-expected-utility "
                    "representations, translate lottery problems, and run the "
                    "property suites.")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--server", help="send requests to a running service instead "
                                         "of computing in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a rule on a problem file")
    p.add_argument("file")
    p.add_argument("rule")

    p = sub.add_parser("represent",
                       help="build a GEU representation of a rule on a problem")
    p.add_argument("file")
    p.add_argument("rule")
    p.add_argument("mode", choices=["example", "thm2", "uniform", "thm3", "ordinal"])

    p = sub.add_parser("check", help="check a relation property of a rule's output")
    p.add_argument("property", choices=["uniform", "respects-utility",
                                        "weakly-respects-utility", "lottery-uniform"])
    p.add_argument("file")
    p.add_argument("--rule", default="geu")

    p = sub.add_parser("lottery", help="lottery/act translations")
    lsub = p.add_subparsers(dest="subcommand", required=True)
    li = lsub.add_parser("induce", help="induced lotteries of a plausibilistic problem")
    li.add_argument("file")
    lc = lsub.add_parser("construct", help="build an inducing plausibilistic situation")
    lc.add_argument("file")
    lcs = lsub.add_parser("construct-standard",
                          help="interval-partition construction for additive lotteries")
    lcs.add_argument("file")

    p = sub.add_parser("aa", help="state-indexed (two-level) lottery problems")
    asub = p.add_subparsers(dest="subcommand", required=True)
    af = asub.add_parser("flatten", help="flatten to an act problem")
    af.add_argument("file")
    ae = asub.add_parser("eval", help="evaluate horse lotteries by two-level expectation")
    ae.add_argument("file")

    p = sub.add_parser("fuzz", help="run the seeded property suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--suite")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            import uvicorn
            uvicorn.run("geu.service:app", host=args.host, port=args.port)
            return 0
        if args.command == "eval":
            route, payload = "eval", {"document": _load_document(args.file),
                                      "rule": args.rule}
        elif args.command == "represent":
            route, payload = "represent", {"document": _load_document(args.file),
                                           "rule": args.rule, "mode": args.mode}
        elif args.command == "check":
            route, payload = "check", {"document": _load_document(args.file),
                                       "property": args.property, "rule": args.rule}
        elif args.command == "lottery":
            if args.subcommand == "induce":
                route, payload = "lottery-induce", {"document": _load_document(args.file)}
            else:
                route = "lottery-construct"
                payload = {"document": _load_document(args.file),
                           "standard": args.subcommand == "construct-standard"}
        elif args.command == "aa":
            route = "aa-flatten" if args.subcommand == "flatten" else "aa-eval"
            payload = {"document": _load_document(args.file)}
        else:
            route, payload = "fuzz", {"seed": args.seed, "count": args.count,
                                      "suite": args.suite}
        data = _dispatch(route, payload, args.server)
    except GeuError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit(data, _ROUTES[route][3], args.format)
    return _result_code(route, data)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
