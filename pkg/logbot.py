import sys

import requests

import config

logs_format = {
    "username": "lpchange",
    "avatar_url": config.DISCORD_AVATAR_URL,
    "content": "",
}

_quiet = bool(config.QUIET)


def set_quiet(quiet: bool):
    global _quiet
    _quiet = bool(quiet)


def logs(message, error=False, log_to_discord=True):
    """Log to stderr (stdout carries reports) and, if configured, Discord."""
    if _quiet and not error:
        return
    print(message, file=sys.stderr)
    if not log_to_discord or not (config.DISCORD_LOGS_URL or config.DISCORD_ERR_URL):
        return
    payload = dict(logs_format, content=str(message)[:2000])
    try:
        if config.DISCORD_LOGS_URL:
            requests.post(config.DISCORD_LOGS_URL, json=payload, timeout=5)
        if error and config.DISCORD_ERR_URL:
            requests.post(config.DISCORD_ERR_URL, json=payload, timeout=5)
    except requests.RequestException:
        pass
