import sys
from typing import Callable, Iterable, Optional, Protocol, TextIO

import logfire

from facility_lens.core.domain.models import SearchEvent


class SearchEventSink(Protocol):
    def emit(self, event: SearchEvent) -> None: ...


class JSONLinesTransport:
    """One JSON object per line; stdout stays reserved for results."""

    def __init__(self, stream: Optional[TextIO] = None):
        self.stream = stream

    def emit(self, event: SearchEvent) -> None:
        print(event.to_json(), file=self.stream or sys.stderr, flush=True)


class CallbackTransport:
    """Hands each event to a callable, e.g. a progress bar updater."""

    def __init__(self, callback: Callable[[SearchEvent], None]):
        self.callback = callback

    def emit(self, event: SearchEvent) -> None:
        self.callback(event)


class EventEmitter:
    """Fans search events out to its sinks.

    A sink that raises is logged and skipped; the search keeps going.
    """

    def __init__(self, transports: Optional[Iterable[SearchEventSink]] = None):
        self.transports: list[SearchEventSink] = list(transports or [])

    def add_transport(self, transport: SearchEventSink) -> None:
        self.transports.append(transport)

    def emit(self, event: SearchEvent) -> None:
        for transport in self.transports:
            try:
                transport.emit(event)
            except Exception as e:  # noqa: BLE001
                logfire.warn(
                    "event transport {transport} failed on {event_type}: {error}",
                    transport=type(transport).__name__,
                    event_type=event.type,
                    error=str(e),
                )
