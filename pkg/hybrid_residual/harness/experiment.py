# Copyright (c) 2022, hybrid_residual authors. All rights reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Seeded collect-then-update loop over parallel training and evaluation environments."""
import copy
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional

from tqdm import tqdm

from hybrid_residual.curriculum.curriculum import curriculum_step, difficulty_profile
from hybrid_residual.harness import records
from hybrid_residual.harness.config import ExperimentConfig
from hybrid_residual.harness.records import CsvRecordWriter
from hybrid_residual.harness.rollout import EVAL_ENV_ID_OFFSET, EnvWorker, EpisodeResult, Role
from hybrid_residual.policy.buffer import RolloutBuffer
from hybrid_residual.policy.checkpoint import save_checkpoint
from hybrid_residual.policy.network import PolicyNet
from hybrid_residual.policy.ppo import PPOOptimizer
from hybrid_residual.residual.config import ResidualMode
from hybrid_residual.utils.seeding import StreamPurpose, rng_stream
from hybrid_residual.utils.workspace import Workspace
from hybrid_residual.world.env import OBSERVATION_DIM

LOGGER = logging.getLogger(__name__)


@dataclass
class RunFiles:
    episodes: Path
    curriculum: Path
    updates: Path
    steps: Optional[Path] = None
    machine_trace: Optional[Path] = None
    checkpoints: Optional[Path] = None

    def as_list(self) -> List[Path]:
        return [path for path in vars(self).values() if path is not None]


class _Writers:
    def __init__(self, output_dir: Path, config: ExperimentConfig):
        self.episodes = CsvRecordWriter(output_dir / records.EPISODES_CSV, "episodes")
        self.curriculum = CsvRecordWriter(output_dir / records.CURRICULUM_CSV, "curriculum")
        self.updates = CsvRecordWriter(output_dir / records.UPDATES_CSV, "updates")
        self.steps = CsvRecordWriter(output_dir / records.STEPS_CSV, "steps") if config.record_steps else None
        self.trace = None
        if config.controller.trace:
            self.trace = CsvRecordWriter(output_dir / records.MACHINE_TRACE_CSV, "machine_trace")

    def close(self):
        for writer in (self.episodes, self.curriculum, self.updates, self.steps, self.trace):
            if writer is not None:
                writer.close()


class _SeedRun:
    def __init__(self, config: ExperimentConfig, seed: int, writers: _Writers, checkpoints_dir: Optional[Path]):
        self.config = config
        self.seed = seed
        self.writers = writers
        self.checkpoints_dir = checkpoints_dir / f"seed_{seed}" if checkpoints_dir is not None else None
        profile = difficulty_profile(config.experiment, config.curriculum)
        train_state = profile.start if config.curriculum_enabled else profile.evaluation()
        self.train_workers = [
            EnvWorker(config, seed, env_id, Role.TRAIN, train_state) for env_id in range(config.n_train_envs)
        ]
        self.eval_workers = [
            EnvWorker(config, seed, EVAL_ENV_ID_OFFSET + k, Role.EVAL, profile.evaluation())
            for k in range(config.n_eval_envs)
        ]
        self.net = None
        self.optimizer = None
        if config.mode != ResidualMode.NONE:
            self.net = PolicyNet(
                OBSERVATION_DIM,
                config.mode.action_dim(config.arm.n_joints),
                window=config.policy.window,
                hidden_sizes=config.policy.hidden_sizes,
                init_log_std=config.policy.init_log_std,
                obs_scale=config.policy.obs_scale,
                rng=rng_stream(seed, 0, StreamPurpose.INIT),
            )
            self.optimizer = PPOOptimizer(
                self.net,
                config.optim,
                rng_stream(seed, 0, StreamPurpose.OPTIM),
                seed=seed,
                dump_dir=self.checkpoints_dir,
            )
        self.episode_count = 0
        self.clip_fraction = 0.0

    def _run_workers(self, pool: ThreadPoolExecutor, workers: List[EnvWorker]) -> List[EpisodeResult]:
        # every worker gets its own parameter snapshot; results come back in env order
        futures = [pool.submit(worker.run_episode, copy.deepcopy(self.net)) for worker in workers]
        return [future.result() for future in futures]

    def _episode_row(self, result: EpisodeResult, episode: int) -> Dict:
        return {
            "mode": self.config.mode.value,
            "experiment": self.config.experiment.value,
            "seed": self.seed,
            "env_id": result.env_id,
            "role": result.role.value,
            "episode": episode,
            "success": result.success,
            "return": result.episode_return,
            "ticks": result.ticks,
            "final_state": result.final_state,
            "pos_std": result.pos_std,
            "ori_std": result.ori_std,
            "ik_fallbacks": result.ik_fallbacks,
            "clip_fraction": self.clip_fraction,
        }

    def _write_trace(self, result: EpisodeResult, episode: int):
        if self.writers.trace is None:
            return
        for tick, phase in result.phase_trace:
            self.writers.trace.write(
                {
                    "seed": self.seed,
                    "env_id": result.env_id,
                    "role": result.role.value,
                    "episode": episode,
                    "tick": tick,
                    "phase": phase,
                }
            )

    def evaluate(self, pool: ThreadPoolExecutor):
        results = self._run_workers(pool, self.eval_workers)
        for result in results:
            self.writers.episodes.write(self._episode_row(result, self.episode_count))
            self._write_trace(result, self.episode_count)
        rate = sum(result.success for result in results) / max(len(results), 1)
        LOGGER.debug(f"seed {self.seed} episode {self.episode_count}: eval success {rate:.2f}")

    def collect_and_update(self, pool: ThreadPoolExecutor) -> int:
        results = self._run_workers(pool, self.train_workers)
        buffer = RolloutBuffer(gamma=self.config.optim.gamma)
        for worker, result in zip(self.train_workers, results):
            self.episode_count += 1
            self.writers.episodes.write(self._episode_row(result, self.episode_count))
            self._write_trace(result, self.episode_count)
            if self.writers.steps is not None:
                self.writers.steps.write_rows(result.steps)
            if self.config.curriculum_enabled:
                worker.curriculum = curriculum_step(worker.curriculum, result.success)
            self.writers.curriculum.write(
                {
                    "seed": self.seed,
                    "env_id": result.env_id,
                    "episode": self.episode_count,
                    "pos_std": result.pos_std,
                    "ori_std": result.ori_std,
                    "success": result.success,
                }
            )
            buffer.extend(result.buffer)

        if self.optimizer is not None:
            if len(buffer) == 0:
                LOGGER.warning(f"seed {self.seed}: no gated steps in the last {len(results)} episodes, skipping update")
            else:
                diagnostics = self.optimizer.update(buffer, self.episode_count)
                self.clip_fraction = diagnostics["clip_fraction"]
                self.writers.updates.write(
                    {
                        "seed": self.seed,
                        "update": self.optimizer.updates,
                        "episode_count": self.episode_count,
                        "warmup": bool(diagnostics["warmup"]),
                        "policy_loss": diagnostics["policy_loss"],
                        "value_loss": diagnostics["value_loss"],
                        "entropy": diagnostics["entropy"],
                        "approx_kl": diagnostics["approx_kl"],
                        "clip_fraction": diagnostics["clip_fraction"],
                    }
                )
                every = self.config.checkpoint_every
                if every and self.optimizer.updates % every == 0:
                    self.save(f"update_{self.optimizer.updates}")
        return len(results)

    def save(self, name: str):
        if self.net is not None:
            save_checkpoint(self.net, self.checkpoints_dir / name, self.seed, self.episode_count)


def run_experiment(config: ExperimentConfig, *, show_progress: bool = False) -> RunFiles:
    """Train and periodically evaluate every seed; returns the files written to `config.output_dir`."""
    workspace = Workspace(config.output_dir)
    has_checkpoints = config.mode != ResidualMode.NONE
    checkpoints_dir = workspace.subdir("checkpoints") if has_checkpoints else None
    writers = _Writers(workspace.path, config)
    LOGGER.info(
        f"Running {config.mode.value} / {config.experiment.value}{' (scratch)' if config.scratch else ''} "
        f"for seeds {list(config.seeds)}, {config.total_episodes} episodes each"
    )
    try:
        with ThreadPoolExecutor(max_workers=config.n_workers) as pool:
            for seed in config.seeds:
                run = _SeedRun(config, seed, writers, checkpoints_dir)
                with tqdm(total=config.total_episodes, desc=f"seed {seed}", disable=not show_progress) as progress:
                    run.evaluate(pool)
                    last_eval = 0
                    while run.episode_count < config.total_episodes:
                        progress.update(run.collect_and_update(pool))
                        if run.episode_count - last_eval >= config.eval_every:
                            run.evaluate(pool)
                            last_eval = run.episode_count
                run.save("final")
                LOGGER.info(f"seed {seed} finished after {run.episode_count} training episodes")
    finally:
        writers.close()

    return RunFiles(
        episodes=writers.episodes.path,
        curriculum=writers.curriculum.path,
        updates=writers.updates.path,
        steps=writers.steps.path if writers.steps is not None else None,
        machine_trace=writers.trace.path if writers.trace is not None else None,
        checkpoints=checkpoints_dir,
    )


def run_scratch_baseline(config: ExperimentConfig, *, show_progress: bool = False) -> RunFiles:
    """Policy joint torques replace the controller in the RL-gated phases."""
    return run_experiment(replace(config, mode=ResidualMode.JOINT_EFFORT, scratch=True), show_progress=show_progress)
