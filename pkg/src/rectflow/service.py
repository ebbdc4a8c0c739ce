"""HTTP service exposing validation, solving, and the example catalog.

Error envelope: {"code", "message", "details"} with codes VALIDATION (422),
INFEASIBLE (409), NON_CONVERGENT (409), INTERNAL (500).  Malformed JSON is
a plain 400.  Solve responses are the same canonical bytes the CLI writes.
"""

from __future__ import annotations

import json
import logging
import os
import sys
import time

import click
import uvicorn
from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from .dimension import CONVERGED, InfeasibleError
from .fixtures import fixture_catalog
from .projectio import (
    ProjectError,
    ValidateRequestDoc,
    canonicalize,
    collect_violations,
    matrix_from_rows,
    project_from_dict,
    project_to_doc,
    solve_project,
    trace_to_doc,
    write_result,
)

MAX_BODY_BYTES = 1_000_000
SOLVE_TIMEOUT_S = 10.0

log = logging.getLogger("rectflow.service")


def _error(status: int, code: str, message: str, details=None) -> JSONResponse:
    body = {"code": code, "message": message, "details": details}
    return JSONResponse(status_code=status, content=body)


async def _read_json_body(request: Request):
    """Returns (data, error_response); oversize and malformed bodies short-circuit."""
    raw = await request.body()
    if len(raw) > MAX_BODY_BYTES:
        return None, _error(
            422, "VALIDATION", f"request body exceeds {MAX_BODY_BYTES} bytes"
        )
    try:
        data = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        return None, JSONResponse(
            status_code=400, content={"message": f"malformed JSON: {exc}"}
        )
    if not isinstance(data, dict):
        return None, _error(422, "VALIDATION", "document must be a JSON object")
    return data, None


def create_app(solve_timeout_s: float = SOLVE_TIMEOUT_S) -> FastAPI:
    app = FastAPI(title="rectflow", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=os.environ.get("RECTFP_CORS", "*").split(","),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(Exception)
    async def _internal(request: Request, exc: Exception):
        log.exception("unhandled error on %s", request.url.path)
        return _error(500, "INTERNAL", "internal error")

    @app.get("/api/health")
    async def health() -> dict:
        return {"status": "ok"}

    @app.get("/api/examples")
    async def examples() -> Response:
        catalog = [
            {
                "name": fx.name,
                "description": fx.description,
                "project": project_to_doc(fx.project),
            }
            for fx in fixture_catalog()
        ]
        return JSONResponse(content=canonicalize(catalog))

    @app.post("/api/validate")
    async def validate_endpoint(request: Request) -> Response:
        data, err = await _read_json_body(request)
        if err is not None:
            return err
        try:
            doc = ValidateRequestDoc.model_validate(data)
        except ValidationError as exc:
            return _error(
                422,
                "VALIDATION",
                "request does not match the schema",
                [e["msg"] for e in exc.errors()][:20],
            )
        try:
            matrix = matrix_from_rows(doc.matrix)
        except ProjectError as exc:
            return _error(422, "VALIDATION", "invalid matrix", exc.messages)
        keys = None
        if doc.constraints is not None:
            ids = []
            for key in doc.constraints:
                try:
                    ids.append(int(key))
                except ValueError:
                    return _error(
                        422, "VALIDATION", f"constraint key {key!r} is not a room id"
                    )
            keys = set(ids)
        violations = collect_violations(matrix, keys)
        return JSONResponse(
            content={
                "violations": [
                    {"rule": v.rule, "message": v.message, "cells": [list(c) for c in v.cells]}
                    for v in violations
                ]
            }
        )

    @app.post("/api/solve")
    async def solve_endpoint(request: Request) -> Response:
        data, err = await _read_json_body(request)
        if err is not None:
            return err
        try:
            project = project_from_dict(data)
        except ProjectError as exc:
            return _error(422, "VALIDATION", "invalid project", exc.messages)

        violations = collect_violations(project.matrix, set(project.constraints))
        if violations:
            return _error(
                422,
                "VALIDATION",
                "arrangement rules violated",
                [str(v) for v in violations],
            )

        deadline = time.monotonic() + solve_timeout_s
        try:
            result = solve_project(project, deadline=deadline)
        except InfeasibleError as exc:
            return _error(
                409,
                "INFEASIBLE",
                str(exc),
                {
                    "network": exc.network,
                    "iteration": exc.iteration,
                    "certificate": exc.certificate,
                },
            )
        if result.status != CONVERGED:
            return _error(
                409,
                "NON_CONVERGENT",
                f"no convergence within {project.options.max_iterations} iterations",
                {"trace": canonicalize(trace_to_doc(result.dimensions.trace))},
            )
        return Response(content=write_result(result), media_type="application/json")

    return app


app = create_app()


@click.command()
@click.option("--host", default=None, help="Bind address (default from RECTFP_ADDR or 127.0.0.1).")
@click.option("--port", type=int, default=None, help="Port (default from RECTFP_ADDR or 8000).")
def main(host, port) -> None:
    """Run the floorplan service."""
    addr = os.environ.get("RECTFP_ADDR", "127.0.0.1:8000")
    env_host, _, env_port = addr.rpartition(":")
    if host is None:
        host = env_host or "127.0.0.1"
    if port is None:
        try:
            port = int(env_port)
        except ValueError:
            click.echo(f"bad RECTFP_ADDR port: {env_port!r}", err=True)
            sys.exit(1)
    level = os.environ.get("RECTFP_LOG", "info").lower()
    uvicorn.run(app, host=host, port=port, log_level=level)


if __name__ == "__main__":
    main()
