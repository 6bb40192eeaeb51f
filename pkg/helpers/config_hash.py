import hashlib
import json


def config_hash(config) -> str:
    """
    Stable short hash of a config: a pydantic model, a dict, or None.

    Keys are sorted so the hash does not depend on field order.
    """
    if config is None:
        return "none"
    data = config.model_dump(mode="json") if hasattr(config, "model_dump") else config
    payload = json.dumps(data, sort_keys=True, default=str)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]
