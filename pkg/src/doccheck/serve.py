"""HTTP service exposing the check pipeline to the review UI."""

from __future__ import annotations

import email.parser
import email.policy
import sys
import uuid

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import __version__
from .detect import DecodeConfig, check_records
from .extract import parse_source
from .languages import LanguageId, language_for_path, parse_language, support_level
from .model import DocModel, parameter_count
from .tokenize import Vocabulary

MAX_CODE_BYTES = 1 << 20  # request contract: code payloads top out at 1 MiB


class _BadRequest(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


def _parse_multipart(content_type: str, body: bytes) -> dict[str, tuple[str | None, bytes]]:
    """Decode multipart/form-data into {field name: (filename, payload)}.

    Parsed with the stdlib email machinery; the synthetic header block turns
    the raw HTTP body into a well-formed MIME document.
    """
    document = (
        b"Content-Type: " + content_type.encode("latin-1")
        + b"\r\nMIME-Version: 1.0\r\n\r\n" + body
    )
    message = email.parser.BytesParser(policy=email.policy.HTTP).parsebytes(document)
    if not message.is_multipart():
        raise _BadRequest(400, "malformed multipart body")
    fields: dict[str, tuple[str | None, bytes]] = {}
    for part in message.iter_parts():
        name = part.get_param("name", header="content-disposition")
        if not name:
            continue
        payload = part.get_payload(decode=True)
        fields[str(name)] = (part.get_filename(), payload or b"")
    return fields


def _decode_text(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError:
        raise _BadRequest(400, "code is not valid UTF-8") from None


def _parse_threshold(raw) -> float | None:
    if raw is None or raw == "":
        return None
    try:
        value = float(raw)
    except (TypeError, ValueError):
        raise _BadRequest(400, "threshold must be a number") from None
    if not 0.0 < value < 1.0:
        raise _BadRequest(400, "threshold must lie strictly between 0 and 1")
    return value


def _parse_json_request(data) -> tuple[str, str | None, float | None]:
    if not isinstance(data, dict):
        raise _BadRequest(400, "body must be a JSON object")
    code = data.get("code")
    if code is None:
        raise _BadRequest(400, "exactly one of code or file is required")
    if not isinstance(code, str):
        raise _BadRequest(400, "code must be a string")
    language = data.get("language")
    if language is not None and not isinstance(language, str):
        raise _BadRequest(400, "language must be a string")
    return code, language, _parse_threshold(data.get("threshold"))


def _parse_form_request(fields) -> tuple[str, str | None, float | None]:
    has_code = "code" in fields
    has_file = "file" in fields
    if has_code == has_file:
        raise _BadRequest(400, "exactly one of code or file is required")
    if has_code:
        filename, payload = None, fields["code"][1]
    else:
        filename, payload = fields["file"]
    code = _decode_text(payload)

    language = None
    if "language" in fields:
        language = _decode_text(fields["language"][1])
    elif filename:
        inferred = language_for_path(filename)
        if inferred is not None:
            language = inferred.value
    raw_threshold = fields.get("threshold")
    threshold = _parse_threshold(_decode_text(raw_threshold[1]) if raw_threshold else None)
    return code, language, threshold


def build_app(
    model: DocModel,
    vocab: Vocabulary,
    threshold: float = 0.5,
    decode_cfg: DecodeConfig = DecodeConfig(),
) -> FastAPI:
    """Wire the loaded model into a FastAPI app; the model is never mutated."""
    app = FastAPI(title="doccheck", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    model_version = f"doccheck-{__version__}-p{parameter_count(model.config)}"

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/api/languages")
    def languages():
        return [
            {"id": lang.value, "supported": support_level(lang)}
            for lang in LanguageId
        ]

    @app.post("/api/check")
    async def check(request: Request):
        try:
            body = await request.body()
            content_type = request.headers.get("content-type", "")
            if content_type.startswith("multipart/form-data"):
                code, language_raw, req_threshold = _parse_form_request(
                    _parse_multipart(content_type, body)
                )
            else:
                try:
                    data = await request.json()
                except Exception:
                    raise _BadRequest(400, "body must be valid JSON") from None
                code, language_raw, req_threshold = _parse_json_request(data)

            if len(code.encode("utf-8")) > MAX_CODE_BYTES:
                raise _BadRequest(413, "code exceeds 1 MiB")
            if not language_raw:
                raise _BadRequest(400, "language is required")
            try:
                language = parse_language(language_raw)
            except ValueError as exc:
                raise _BadRequest(422, str(exc)) from None

            parsed = parse_source(code, language)
            results = check_records(
                parsed.records, model, vocab,
                threshold=req_threshold if req_threshold is not None else threshold,
                decode_cfg=decode_cfg,
            )
            return JSONResponse(
                {
                    "results": [r.to_json_dict() for r in results],
                    "edits": [hint.to_json_dict() for hint in parsed.edit_hints],
                    "diagnostics": list(parsed.diagnostics),
                    "model_version": model_version,
                }
            )
        except _BadRequest as exc:
            return JSONResponse({"error": str(exc)}, status_code=exc.status)
        except Exception:  # noqa: BLE001 - opaque 500 by contract
            fault = uuid.uuid4().hex
            print(f"internal fault {fault}", file=sys.stderr)
            return JSONResponse(
                {"error": "internal", "id": fault}, status_code=500
            )

    return app
