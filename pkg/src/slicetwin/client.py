"""Client for the HTTP service, used by the CLI.

Without a URL it mounts the application in-process over ASGI, so the command
line works with no server running; with one it talks to a remote deployment
over the same contract. Either way the CLI stays a thin transport around the
service's JSON.
"""

from __future__ import annotations

import asyncio

import httpx


class ServiceValidationError(Exception):
    """The service rejected the request (bad config, checkpoint, or fields)."""


class ServiceRuntimeError(Exception):
    """The service failed or could not be reached."""


class ServiceClient:
    def __init__(self, url: str | None = None):
        self.url = url

    def get(self, path: str) -> dict:
        return self._request("GET", path, None)

    def post(self, path: str, payload: dict) -> dict:
        return self._request("POST", path, payload)

    def _request(self, method: str, path: str, payload: dict | None) -> dict:
        try:
            response = asyncio.run(self._send(method, path, payload))
        except httpx.HTTPError as exc:
            raise ServiceRuntimeError(f"transport failure: {exc}") from exc
        if response.status_code in (400, 422):
            raise ServiceValidationError(_detail(response))
        if response.status_code != 200:
            raise ServiceRuntimeError(
                f"service returned {response.status_code}: {_detail(response)}"
            )
        return response.json()

    async def _send(self, method: str, path: str, payload: dict | None) -> httpx.Response:
        if self.url is None:
            from .service.app import app

            transport = httpx.ASGITransport(app=app)
            base_url = "http://slicetwin.internal"
        else:
            transport = None
            base_url = self.url
        # Training requests legitimately run for minutes; no client timeout.
        async with httpx.AsyncClient(
            transport=transport, base_url=base_url, timeout=None
        ) as client:
            return await client.request(method, path, json=payload)


def _detail(response: httpx.Response) -> str:
    try:
        body = response.json()
    except ValueError:
        return response.text.strip() or f"HTTP {response.status_code}"
    if isinstance(body, dict) and "detail" in body:
        detail = body["detail"]
        if isinstance(detail, str):
            return detail
        # Pydantic 422 bodies carry a list of error objects.
        if isinstance(detail, list):
            parts = []
            for err in detail:
                loc = ".".join(str(p) for p in err.get("loc", []))
                parts.append(f"{loc}: {err.get('msg', 'invalid')}")
            return "; ".join(parts) or str(detail)
        return str(detail)
    return str(body)
