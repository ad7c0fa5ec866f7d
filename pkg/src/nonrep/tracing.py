# Copyright 2025 nonrep-grids contributors.
# See LICENSE file for licensing details.

"""Optional OpenTelemetry tracing of long-running searches.

Tracing is off until `setup_tracing` installs a provider, which the CLI does
when a tracing endpoint is configured (`--tracing-endpoint` or the
`NONREP_TRACING_ENDPOINT` environment variable). Spans are pushed over
OTLP/HTTP to `{endpoint}/v1/traces`.

Instrument a function with:

    @trace_function
    def find_repetitive_path(cg, budget): ...

and attach attributes to the running span with:

    span = get_current_span()
    if span:
        span.set_attribute("nonrep.status", "pass")
"""

import functools
import logging
import os
from contextlib import contextmanager
from contextvars import ContextVar
from typing import Any, Callable, Generator, List, Optional, TypeVar, Union, cast

from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import Span, TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor, SpanExporter
from opentelemetry.trace import INVALID_SPAN, Tracer
from opentelemetry.trace import get_current_span as otlp_get_current_span

from nonrep.errors import TracingError

logger = logging.getLogger(__name__)

SERVICE_NAME = "nonrep"
TRACING_ENABLED = "NONREP_TRACING_ENABLED"
# seconds the exporter gets per push
_OTLP_SPAN_EXPORTER_TIMEOUT = 1

_F = TypeVar("_F", bound=Callable[..., Any])
tracer: ContextVar[Tracer] = ContextVar("tracer")


class _OTLPSpanExporter(OTLPSpanExporter):
    """OTLPSpanExporter with a short retry window so a dead endpoint cannot stall a run."""

    _MAX_RETRY_TIMEOUT = 4


def is_enabled() -> bool:
    """Whether tracing is enabled."""
    return os.getenv(TRACING_ENABLED, "1") == "1"


@contextmanager
def tracing_disabled():
    """Contextmanager to temporarily disable tracing.

    For usage in tests.
    """
    previous = os.getenv(TRACING_ENABLED, "1")
    os.environ[TRACING_ENABLED] = "0"
    try:
        yield
    finally:
        os.environ[TRACING_ENABLED] = previous


def get_current_span() -> Union[Span, None]:
    """Return the currently active Span, if there is one, else None."""
    span = otlp_get_current_span()
    if span is INVALID_SPAN:
        return None
    return cast(Span, span)


def _get_tracer() -> Optional[Tracer]:
    if not is_enabled():
        return None
    try:
        return tracer.get()
    except LookupError:
        return None


@contextmanager
def _span(name: str) -> Generator[Optional[Span], Any, Any]:
    """Context to create a span if there is a tracer, otherwise do nothing."""
    if active := _get_tracer():
        with active.start_as_current_span(name) as span:
            yield cast(Span, span)
    else:
        yield None


def setup_tracing(
    endpoint: Optional[str] = None, exporter: Optional[SpanExporter] = None
) -> Optional[TracerProvider]:
    """Install a tracer exporting to `endpoint` and/or `exporter`.

    Returns the provider so the caller can flush it on exit, or None when
    neither an endpoint nor an exporter was given.
    """
    if endpoint is None and exporter is None:
        return None
    exporters: List[SpanExporter] = []
    if endpoint is not None:
        if not endpoint.startswith(("http://", "https://")):
            raise TracingError(f"tracing endpoint must be an http(s) url, got {endpoint!r}")
        url = f"{endpoint.rstrip('/')}/v1/traces"
        logger.debug("setting up span exporter to endpoint: %s", url)
        exporters.append(_OTLPSpanExporter(endpoint=url, timeout=_OTLP_SPAN_EXPORTER_TIMEOUT))
    if exporter is not None:
        exporters.append(exporter)

    resource = Resource.create(attributes={"service.name": SERVICE_NAME})
    provider = TracerProvider(resource=resource)
    for span_exporter in exporters:
        provider.add_span_processor(BatchSpanProcessor(span_exporter))
    tracer.set(provider.get_tracer(SERVICE_NAME))
    return provider


def shutdown_tracing(provider: Optional[TracerProvider]) -> None:
    """Flush pending spans and stop emitting new ones."""
    if provider is None:
        return
    provider.force_flush()
    provider.shutdown()
    tracer.set(cast(Tracer, None))


def trace_function(function: _F, name: Optional[str] = None) -> _F:
    """Trace this function.

    A span will be opened when this function is called and closed when it returns.
    """
    return _trace_callable(function, "function", name=name)


def _trace_callable(callable: _F, qualifier: str, name: Optional[str] = None) -> _F:
    @functools.wraps(callable)
    def wrapped_function(*args, **kwargs):  # type: ignore
        name_ = name or getattr(
            callable, "__qualname__", getattr(callable, "__name__", str(callable))
        )
        with _span(f"{qualifier} call: {name_}"):
            return callable(*args, **kwargs)

    return cast(_F, wrapped_function)
