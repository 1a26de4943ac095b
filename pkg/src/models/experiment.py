# -*- coding: utf-8 -*-

"""
Sweep orchestration module.

Defines the Experiment class, which verifies every point of a family
sweep as an excluded minor. Points fan out over joblib workers, come
back in grid order, and are checkpointed to a CSV so an interrupted
sweep resumes where it stopped.
"""

import logging
import os
import time

import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from src.config.settings import get_settings
from src.data.families import FamilyParams
from src.models.exceptions import MatroidError
from src.models.excluded_minor import ExcludedMinorVerifier


logger = logging.getLogger(__name__)

COLUMNS = [
    "point_id", "family", "params", "n", "rank",
    "verdict", "status", "reason", "seconds",
]


def _params_text(params):
    return ",".join(str(p) for p in params)


def verify_point(point_id, family, params, budget):
    """
    Build one family member and verify it.

    Errors from the family are recorded, not raised, so a sweep never
    stops on a single bad point.

    Returns:
        dict: one result row.
    """
    start = time.perf_counter()
    row = {
        "point_id": point_id,
        "family": family,
        "params": _params_text(params),
        "n": None,
        "rank": None,
    }
    try:
        matroid = FamilyParams(family, tuple(params)).build()
        row["n"], row["rank"] = matroid.n, matroid.full_rank
        report = ExcludedMinorVerifier(budget).verify(matroid)
        row["verdict"] = report.verdict
        row["status"] = report.status
        row["reason"] = report.certificate.get("reason", "")
    except MatroidError as error:
        row["verdict"] = None
        row["status"] = "error"
        row["reason"] = f"{type(error).__name__}: {error}"
    row["seconds"] = round(time.perf_counter() - start, 6)
    return row


# -------------------------------------------------------------------
# Sweep orchestrator
# -------------------------------------------------------------------
class Experiment:
    """
    Verifies a list of family points.

    Args:
        settings (list[dict]): {"family", "params"} per point, e.g.
            from settings_generator.grid.
        budget (int | None): search budget, from settings if None.
        n_jobs (int | None): joblib workers, from settings if None.
        results_path (str | None): checkpoint CSV; None keeps results
            in memory only.
    """

    def __init__(self, settings, budget=None, n_jobs=None,
                 results_path=None):
        config = get_settings()
        self.settings = list(settings)
        self.budget = config.search_budget if budget is None else budget
        self.n_jobs = config.n_jobs if n_jobs is None else n_jobs
        self.results_path = results_path

    # -------------------------------------------------------------------
    # Execution
    # -------------------------------------------------------------------
    def iter_results(self, progress=True, checkpoint=25):
        """
        Yield result rows in grid order, skipping points already in
        the checkpoint CSV.

        Args:
            progress (bool): show a tqdm bar.
            checkpoint (int): rows buffered between CSV appends.
        """
        done = self.health_check()
        pending = [
            (point_id, point) for point_id, point in enumerate(self.settings)
            if point_id not in done
        ]
        logger.info(
            f"Sweep of {len(self.settings)} points; "
            f"{len(done)} already saved"
        )
        tasks = (
            delayed(verify_point)(
                point_id, point["family"], point["params"], self.budget
            )
            for point_id, point in pending
        )
        rows = Parallel(n_jobs=self.n_jobs, return_as="generator")(tasks)
        buffer = []
        for row in tqdm(rows, total=len(pending), desc="Sweep",
                        disable=not progress):
            buffer.append(row)
            if len(buffer) >= checkpoint:
                self.save_results(buffer)
                buffer = []
            yield row
        self.save_results(buffer)

    def run(self, progress=True):
        """
        Run the whole sweep.

        Returns:
            pandas.DataFrame: one row per point processed in this run.
        """
        rows = list(self.iter_results(progress=progress))
        frame = pd.DataFrame(rows, columns=COLUMNS)
        failures = frame[frame["status"] != "true"]
        if len(failures):
            logger.warning(f"{len(failures)} sweep points did not verify")
        return frame

    # -------------------------------------------------------------------
    # Persistence
    # -------------------------------------------------------------------
    def save_results(self, rows):
        """Append rows to the checkpoint CSV, header on first write."""
        if not rows or self.results_path is None:
            return
        directory = os.path.dirname(self.results_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_exists = os.path.isfile(self.results_path)
        pd.DataFrame(rows, columns=COLUMNS).to_csv(
            self.results_path, mode="a", header=not file_exists, index=False
        )

    # -------------------------------------------------------------------
    # Progress recovery
    # -------------------------------------------------------------------
    def health_check(self):
        """
        Point ids already present in the checkpoint CSV.

        Returns:
            set[int]
        """
        if self.results_path is None or \
                not os.path.isfile(self.results_path):
            return set()
        saved = pd.read_csv(self.results_path, usecols=["point_id"])
        return set(int(x) for x in saved["point_id"])
