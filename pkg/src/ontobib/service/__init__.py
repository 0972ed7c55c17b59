"""HTTP facade, persistence, and administrative CLI."""

from ontobib.service.config import PortalConfig
from ontobib.service.state import Portal, PortalState, PortalStore

__all__ = ["Portal", "PortalConfig", "PortalState", "PortalStore"]
