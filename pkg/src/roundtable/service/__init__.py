from .hub import ARCHIVE_FORMAT, DiscussionHub
from .store import CREATE_OP, EventStore, PersistedEvent, apply_event, replay

__all__ = [
    "DiscussionHub",
    "EventStore",
    "PersistedEvent",
    "apply_event",
    "replay",
    "ARCHIVE_FORMAT",
    "CREATE_OP",
]
