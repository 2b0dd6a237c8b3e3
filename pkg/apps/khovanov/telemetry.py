"""
OpenTelemetry and structlog setup for the Khovanov engine.

Initializes tracing (OTLP → collector when configured) and the two
engine instruments (complex builds, elimination time). Logging is
structured through structlog with the active trace/span ids attached
to every event.

Environment variables:
    OTEL_SERVICE_NAME           — Service name for traces/metrics (default: khovanov-engine)
    OTEL_EXPORTER_OTLP_ENDPOINT — Collector endpoint; exporters are disabled when unset
"""
import logging
import os
import sys

import structlog
from opentelemetry import trace
from opentelemetry.metrics import get_meter, set_meter_provider
from opentelemetry.sdk.metrics import MeterProvider
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider

# Module-level instruments, populated by init_metrics()
complexes_built_counter = None
elimination_duration = None

_initialized = False


def _add_trace_context(logger, method_name, event_dict):
    """structlog processor: attach the current span's ids, if any."""
    span = trace.get_current_span()
    ctx = span.get_span_context() if span else None
    if ctx is not None and ctx.is_valid:
        event_dict["trace_id"] = format(ctx.trace_id, "x")
        event_dict["span_id"] = format(ctx.span_id, "x")
    return event_dict


def configure_logging(level: str = "WARNING", json_output: bool = True) -> None:
    """Configure structlog for JSON (or console) output on stderr."""
    renderer = structlog.processors.JSONRenderer() if json_output else structlog.dev.ConsoleRenderer()
    structlog.configure(
        processors=[
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.add_log_level,
            _add_trace_context,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
    logging.basicConfig(level=getattr(logging, level.upper(), logging.WARNING), format="%(message)s", stream=sys.stderr)


def get_logger(name=None):
    return structlog.get_logger(name)


def init_tracing(resource: Resource, endpoint: str):
    """Configure the TracerProvider; spans are exported only when an endpoint is set."""
    provider = TracerProvider(resource=resource)
    if endpoint:
        from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
        from opentelemetry.sdk.trace.export import BatchSpanProcessor

        provider.add_span_processor(BatchSpanProcessor(OTLPSpanExporter(endpoint=f"{endpoint}/v1/traces")))
        logging.info(f"OTLP trace exporter enabled -> {endpoint}")
    trace.set_tracer_provider(provider)


def init_metrics(resource: Resource, endpoint: str):
    """Configure the MeterProvider and the engine instruments."""
    global complexes_built_counter, elimination_duration

    if endpoint:
        from opentelemetry.exporter.otlp.proto.http.metric_exporter import OTLPMetricExporter
        from opentelemetry.sdk.metrics.export import PeriodicExportingMetricReader

        reader = PeriodicExportingMetricReader(OTLPMetricExporter(endpoint=f"{endpoint}/v1/metrics"))
        provider = MeterProvider(resource=resource, metric_readers=[reader])
    else:
        provider = MeterProvider(resource=resource)
    set_meter_provider(provider)

    meter = get_meter(__name__)
    complexes_built_counter = meter.create_counter(
        name="khovanov_complexes_built_total",
        description="Total cube-of-resolutions complexes built",
    )
    elimination_duration = meter.create_histogram(
        name="khovanov_elimination_ms",
        description="Sparse elimination time per matrix block",
        unit="ms",
    )


def init_telemetry():
    """One-call entry point: sets up tracing + metrics from environment (idempotent)."""
    global _initialized
    if _initialized:
        return
    service_name = os.environ.get("OTEL_SERVICE_NAME", "khovanov-engine")
    resource = Resource.create({"service.name": service_name})
    endpoint = os.environ.get("OTEL_EXPORTER_OTLP_ENDPOINT")
    if endpoint and not endpoint.startswith("http"):
        endpoint = f"http://{endpoint}"

    init_tracing(resource, endpoint)
    init_metrics(resource, endpoint)
    _initialized = True


def record_complex_built(crossings: int, algebra: str) -> None:
    if complexes_built_counter is not None:
        complexes_built_counter.add(1, {"crossings": crossings, "algebra": algebra})


def record_elimination(duration_ms: float, size: int) -> None:
    if elimination_duration is not None:
        elimination_duration.record(duration_ms, {"size_bucket": size.bit_length()})
