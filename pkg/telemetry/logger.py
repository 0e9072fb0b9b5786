import json
import os
from datetime import datetime
from pathlib import Path
from typing import Any, Dict

EVENTS_ENV = "SARSOLVE_EVENTS_LOG"


def events_path() -> Path:
    override = os.environ.get(EVENTS_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "events.log"


def log_event(event: Dict[str, Any]) -> None:
    path = events_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = {"timestamp": datetime.utcnow().isoformat() + "Z"}
    payload.update(event)
    with open(path, "a", encoding="utf-8") as f:
        f.write(json.dumps(payload, ensure_ascii=True, default=str) + "\n")
