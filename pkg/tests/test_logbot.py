import requests

import config
import logbot


def test_errors_go_to_stderr_and_both_webhooks(monkeypatch, capsys):
    posted = []
    monkeypatch.setattr(config, "DISCORD_LOGS_URL", "https://discord.invalid/logs")
    monkeypatch.setattr(config, "DISCORD_ERR_URL", "https://discord.invalid/err")
    monkeypatch.setattr(logbot.requests, "post", lambda url, json, timeout: posted.append((url, json["content"])))
    logbot.logs(">>> /!\\ boom", True)
    assert capsys.readouterr().err == ">>> /!\\ boom\n"
    assert posted == [("https://discord.invalid/logs", ">>> /!\\ boom"), ("https://discord.invalid/err", ">>> /!\\ boom")]


def test_quiet_drops_progress(capsys):
    logbot.logs("[Harness] progress")
    assert capsys.readouterr().err == ""


def test_network_failures_are_swallowed(monkeypatch):
    def fail(*args, **kwargs):
        raise requests.ConnectionError("down")

    monkeypatch.setattr(config, "DISCORD_LOGS_URL", "https://discord.invalid/logs")
    monkeypatch.setattr(logbot.requests, "post", fail)
    logbot.logs("still fine", True)
