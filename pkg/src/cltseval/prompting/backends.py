"""Text-generation backends behind a single chat-completion contract.

A backend is anything with a `model_id` attribute and
`complete(system_prompt, user_prompt, temperature, top_p) -> str`.
Provider specifics (request shape, auth) live in per-provider adapters
configured by base URL and model name; a "mock:" base URL selects the
deterministic in-process backend.
"""

from __future__ import annotations

import os

import requests

from ..errors import BackendError


class ChatCompletionBackend:
    """OpenAI-style /chat/completions adapter."""

    def __init__(self, base_url: str, model: str, key_env: str | None = None,
                 name: str | None = None, timeout: float = 120.0):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.key_env = key_env
        self.model_id = name or model
        self.timeout = timeout

    def complete(self, system_prompt: str, user_prompt: str,
                 temperature: float, top_p: float) -> str:
        headers = {}
        if self.key_env:
            token = os.environ.get(self.key_env, "")
            if token:
                headers["Authorization"] = f"Bearer {token}"
        payload = {
            "model": self.model,
            "messages": [
                {"role": "system", "content": system_prompt},
                {"role": "user", "content": user_prompt},
            ],
            "temperature": temperature,
            "top_p": top_p,
        }
        response = requests.post(f"{self.base_url}/chat/completions",
                                 json=payload, headers=headers, timeout=self.timeout)
        if response.status_code != 200:
            raise RuntimeError(f"HTTP {response.status_code}: {response.text[:200]}")
        data = response.json()
        try:
            return data["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise RuntimeError(f"malformed completion response: {data!r:.200}") from exc


class MockBackend:
    """Deterministic in-process backend.

    Behaviors: "echo" returns the user prompt verbatim; "upper" returns it
    uppercased; "const:<text>" always returns <text>.
    """

    def __init__(self, behavior: str = "echo", name: str | None = None):
        self.behavior = behavior
        self.model_id = name or f"mock-{behavior.split(':', 1)[0]}"
        self.calls = 0

    def complete(self, system_prompt: str, user_prompt: str,
                 temperature: float, top_p: float) -> str:
        self.calls += 1
        if self.behavior == "echo":
            return user_prompt
        if self.behavior == "upper":
            return user_prompt.upper()
        if self.behavior.startswith("const:"):
            return self.behavior[len("const:"):]
        raise BackendError(f"unknown mock behavior: {self.behavior!r}")


def make_backend(base_url: str, model: str, key_env: str | None = None,
                 name: str | None = None):
    if base_url.startswith("mock:"):
        behavior = base_url[len("mock:"):] or "echo"
        return MockBackend(behavior, name=name or model)
    return ChatCompletionBackend(base_url, model, key_env, name=name)
