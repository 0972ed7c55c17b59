"""RSS 2.0 feed over translation-proposal activity.

Each open proposal is one live item; the item closes (drops out of the
"open" view) exactly when the proposal is accepted or rejected.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from email.utils import format_datetime

from ontobib.translation.registry import TranslationRegistry

FILTER_OPEN = "open"
FILTER_ALL = "all"

_XML_DECLARATION = '<?xml version="1.0" encoding="UTF-8"?>\n'


def feed(registry: TranslationRegistry, item_filter: str = FILTER_ALL,
         channel_title: str = "Translation proposals",
         channel_link: str = "http://localhost/",
         channel_description: str = "Community translation proposals awaiting committee review") -> str:
    """Render the proposal feed as an RSS 2.0 document."""
    if item_filter not in (FILTER_OPEN, FILTER_ALL):
        raise ValueError(f"unknown feed filter {item_filter!r}")
    rss = ET.Element("rss", {"version": "2.0"})
    channel = ET.SubElement(rss, "channel")
    ET.SubElement(channel, "title").text = channel_title
    ET.SubElement(channel, "link").text = channel_link
    ET.SubElement(channel, "description").text = channel_description
    items = [
        item for item in registry.feed_items.values()
        if item_filter == FILTER_ALL or not item.closed
    ]
    items.sort(key=lambda item: (item.pub_date, item.guid), reverse=True)
    for item in items:
        element = ET.SubElement(channel, "item")
        ET.SubElement(element, "guid", {"isPermaLink": "false"}).text = item.guid
        ET.SubElement(element, "title").text = item.title
        ET.SubElement(element, "description").text = item.description
        ET.SubElement(element, "pubDate").text = format_datetime(item.pub_date)
    ET.indent(rss, space="  ")
    return _XML_DECLARATION + ET.tostring(rss, encoding="unicode") + "\n"
