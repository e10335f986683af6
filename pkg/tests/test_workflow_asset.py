from __future__ import annotations

from importlib import resources

import pytest

yaml = pytest.importorskip("yaml")


@pytest.fixture(scope="module")
def workflow():
    text = resources.files("docdrift").joinpath("data/workflow.yml").read_text()
    return yaml.safe_load(text)


def steps_by_name(workflow):
    (job,) = workflow["jobs"].values()
    return {s["name"]: s for s in job["steps"]}


def test_trigger_and_permissions(workflow):
    # PyYAML reads the bare key ``on`` as boolean True
    assert workflow.get("on", workflow.get(True)) == "pull_request"
    (job,) = workflow["jobs"].values()
    assert job["permissions"] == {"contents": "read", "pull-requests": "write"}


def test_full_depth_checkout(workflow):
    step = steps_by_name(workflow)["Checkout repository"]
    assert step["with"]["fetch-depth"] == 0
    assert step["with"]["path"] == "repo"
    assert step["with"]["ref"] == "${{ github.event.pull_request.head.sha }}"


def test_tolerant_wiki_checkout(workflow):
    step = steps_by_name(workflow)["Checkout wiki"]
    assert step["continue-on-error"] is True
    assert step["with"]["path"] == "wiki"
    assert step["with"]["repository"].endswith(".wiki")


def test_runs_ci_and_exports_comment(workflow):
    run = steps_by_name(workflow)["Run tool"]["run"]
    assert "docdrift ci" in run
    assert "output/comment.md" in run and "GITHUB_ENV" in run


def test_conditional_comment_and_upload(workflow):
    steps = steps_by_name(workflow)
    comment = steps["Comment on pull request"]
    assert comment["if"] == "${{ env.report }}"
    assert "createComment" in comment["with"]["script"]
    upload = steps["Upload artifact"]
    assert upload["if"] == "${{ env.report }}"
    assert upload["with"]["path"].split() == [
        "output/report.csv", "output/summary.csv", "output/summary.md"
    ]
