from .document import CodeSetDocument, Kind, load_document, load_fixture, resolve_document, save_document

__all__ = ["CodeSetDocument", "Kind", "load_document", "load_fixture", "resolve_document", "save_document"]
