from .strategies import (
    Strategy,
    LANGUAGE_NAMES,
    DEFAULT_SYSTEM_PROMPT,
    canonical_templates,
    build_prompts,
)
from .backends import ChatCompletionBackend, MockBackend, make_backend
from .runner import (
    GenerationConfig,
    SystemOutput,
    ResponseCache,
    run_strategy,
    run_matrix,
    load_outputs,
)

__all__ = [
    "Strategy",
    "LANGUAGE_NAMES",
    "DEFAULT_SYSTEM_PROMPT",
    "canonical_templates",
    "build_prompts",
    "ChatCompletionBackend",
    "MockBackend",
    "make_backend",
    "GenerationConfig",
    "SystemOutput",
    "ResponseCache",
    "run_strategy",
    "run_matrix",
    "load_outputs",
]
