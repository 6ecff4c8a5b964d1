"""World model: agents, arena geometry, semantic vocabularies, occlusion,
and per-slot kinematics.

The configuration file format is a plain key-value text with INI-style
sections (documented in the README).  Keys appearing before any section
header belong to the ``[scenario]`` section, so a minimal file may contain
just ``n_agents = 10``.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from enum import IntEnum
from pathlib import Path

import numpy as np


class ConfigError(ValueError):
    """Configuration parsing or validation failure; names the offending key."""


class SemanticType(IntEnum):
    PEDESTRIAN = 0
    BICYCLE = 1
    MOTORCYCLE = 2
    CAR = 3
    BUS = 4


class ActivityClass(IntEnum):
    STANDING = 0
    WALKING = 1
    RUNNING = 2
    TALKING = 3
    CARRYING = 4
    CROSSING = 5
    TURNING = 6
    STOPPING = 7


N_SEMANTIC_TYPES = len(SemanticType)
N_ACTIVITY_CLASSES = len(ActivityClass)


@dataclass(frozen=True)
class SemanticProfile:
    sem: SemanticType
    act: ActivityClass


@dataclass
class AgentState:
    id: int
    position: np.ndarray      # 2-D, meters
    velocity: np.ndarray      # 2-D, m/s
    heading_true: float       # radians in [0, 2*pi)
    profile: SemanticProfile
    los: bool


DEFAULT_MAX_SPEED = {
    SemanticType.PEDESTRIAN: 1.5,
    SemanticType.BICYCLE: 4.0,
    SemanticType.MOTORCYCLE: 8.0,
    SemanticType.CAR: 10.0,
    SemanticType.BUS: 8.0,
}

# Minimum required rate (bits/s) by activity; communication-heavy
# activities sit highest.  Desk-scale defaults, configurable per key.
DEFAULT_MIN_RATE = {
    ActivityClass.STANDING: 1.0e5,
    ActivityClass.WALKING: 1.5e5,
    ActivityClass.RUNNING: 2.0e5,
    ActivityClass.TALKING: 4.0e5,
    ActivityClass.CARRYING: 1.5e5,
    ActivityClass.CROSSING: 2.5e5,
    ActivityClass.TURNING: 1.5e5,
    ActivityClass.STOPPING: 1.0e5,
}

DEFAULT_OCCLUSION_RECTS = ((20.0, 120.0, 60.0, 160.0),
                           (130.0, 30.0, 170.0, 80.0))


def activity_transition_matrix(stickiness: float = 0.9) -> np.ndarray:
    """Markov matrix for per-slot activity transitions (rows sum to 1)."""
    g = N_ACTIVITY_CLASSES
    mat = np.full((g, g), (1.0 - stickiness) / (g - 1))
    np.fill_diagonal(mat, stickiness)
    return mat


def wrap_angle(theta: float) -> float:
    """Wrap an angle to [0, 2*pi)."""
    return theta % (2.0 * math.pi)


@dataclass(frozen=True)
class ScenarioConfig:
    n_agents: int = 10
    arena_size: tuple[float, float] = (200.0, 200.0)
    uav_altitude: float = 120.0
    slot_duration: float = 0.1
    cell_size: float = 10.0
    rng_seed: int = 0
    semantic_noise: float = 0.0      # token confusion probability
    heading_noise: float = 0.0       # token heading noise std, radians
    heading_jitter: float = 0.05     # per-slot mobility heading jitter, rad
    max_speed: dict = field(
        default_factory=lambda: dict(DEFAULT_MAX_SPEED))
    min_rate: dict = field(
        default_factory=lambda: dict(DEFAULT_MIN_RATE))
    occlusion_rects: tuple = DEFAULT_OCCLUSION_RECTS

    def __post_init__(self):
        if self.n_agents < 1:
            raise ConfigError("n_agents must be >= 1")
        if self.arena_size[0] <= 0 or self.arena_size[1] <= 0:
            raise ConfigError("arena_size components must be positive")
        if self.uav_altitude <= 0:
            raise ConfigError("uav_altitude must be positive")
        if self.slot_duration <= 0:
            raise ConfigError("slot_duration must be positive")
        if self.cell_size <= 0:
            raise ConfigError("cell_size must be positive")
        if not 0.0 <= self.semantic_noise <= 1.0:
            raise ConfigError("semantic_noise must lie in [0, 1]")
        if self.heading_noise < 0:
            raise ConfigError("heading_noise must be non-negative")
        if self.heading_jitter < 0:
            raise ConfigError("heading_jitter must be non-negative")
        for key, value in self.max_speed.items():
            if value <= 0:
                raise ConfigError(f"max_speed[{key.name.lower()}] must be positive")
        for key, value in self.min_rate.items():
            if value <= 0:
                raise ConfigError(f"min_rate[{key.name.lower()}] must be positive")

    @property
    def uav_position(self) -> tuple[float, float, float]:
        return (self.arena_size[0] / 2.0, self.arena_size[1] / 2.0,
                self.uav_altitude)

    @property
    def grid_shape(self) -> tuple[int, int]:
        """(rows, cols) of the arena grid at cell_size resolution."""
        return (
            int(math.ceil(self.arena_size[1] / self.cell_size)),
            int(math.ceil(self.arena_size[0] / self.cell_size)),
        )

    def occlusion_grid(self) -> np.ndarray:
        """Boolean grid, True where a cell overlaps an occlusion rect."""
        rows, cols = self.grid_shape
        grid = np.zeros((rows, cols), dtype=bool)
        for (x0, y0, x1, y1) in self.occlusion_rects:
            c0 = max(0, int(math.floor(x0 / self.cell_size)))
            c1 = min(cols, int(math.ceil(x1 / self.cell_size)))
            r0 = max(0, int(math.floor(y0 / self.cell_size)))
            r1 = min(rows, int(math.ceil(y1 / self.cell_size)))
            grid[r0:r1, c0:c1] = True
        return grid


def read_config_sections(path) -> dict[str, dict[str, str]]:
    """Parse the key-value config file into {section: {key: raw value}}.

    Keys before the first section header land in ``scenario``.
    """
    text = Path(path).read_text()
    stripped = text.lstrip()
    if not stripped.startswith("["):
        text = "[scenario]\n" + text
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config file {path}: {exc}") from exc
    return {
        section: dict(parser.items(section))
        for section in parser.sections()
    }


def _parse_float(section: dict, key: str, default: float) -> float:
    if key not in section:
        return default
    try:
        return float(section[key])
    except ValueError as exc:
        raise ConfigError(f"key '{key}' is not a number: {section[key]!r}") from exc


def _parse_int(section: dict, key: str, default: int) -> int:
    if key not in section:
        return default
    try:
        return int(section[key])
    except ValueError as exc:
        raise ConfigError(f"key '{key}' is not an integer: {section[key]!r}") from exc


def _parse_rects(raw: str) -> tuple:
    rects = []
    raw = raw.strip()
    if not raw:
        return ()
    for chunk in raw.split(";"):
        parts = [p for p in chunk.replace(",", " ").split() if p]
        if len(parts) != 4:
            raise ConfigError(
                f"key 'occlusion_rects' entry must have 4 numbers: {chunk!r}"
            )
        rects.append(tuple(float(p) for p in parts))
    return tuple(rects)


def scenario_from_section(section: dict[str, str]) -> ScenarioConfig:
    """Build a ScenarioConfig from raw key-value pairs, applying defaults."""
    max_speed = dict(DEFAULT_MAX_SPEED)
    for sem in SemanticType:
        key = f"max_speed_{sem.name.lower()}"
        max_speed[sem] = _parse_float(section, key, max_speed[sem])
    min_rate = dict(DEFAULT_MIN_RATE)
    for act in ActivityClass:
        key = f"min_rate_{act.name.lower()}"
        min_rate[act] = _parse_float(section, key, min_rate[act])
    rects = DEFAULT_OCCLUSION_RECTS
    if "occlusion_rects" in section:
        rects = _parse_rects(section["occlusion_rects"])
    return ScenarioConfig(
        n_agents=_parse_int(section, "n_agents", 10),
        arena_size=(
            _parse_float(section, "arena_width", 200.0),
            _parse_float(section, "arena_height", 200.0),
        ),
        uav_altitude=_parse_float(section, "uav_altitude", 120.0),
        slot_duration=_parse_float(section, "slot_duration", 0.1),
        cell_size=_parse_float(section, "cell_size", 10.0),
        rng_seed=_parse_int(section, "rng_seed", 0),
        semantic_noise=_parse_float(section, "semantic_noise", 0.0),
        heading_noise=_parse_float(section, "heading_noise", 0.0),
        heading_jitter=_parse_float(section, "heading_jitter", 0.05),
        max_speed=max_speed,
        min_rate=min_rate,
        occlusion_rects=rects,
    )


def load_config(path) -> ScenarioConfig:
    """Load and validate the scenario section of a configuration file."""
    sections = read_config_sections(path)
    return scenario_from_section(sections.get("scenario", {}))


def line_of_sight(position, cfg: ScenarioConfig,
                  occlusion: np.ndarray) -> bool:
    """True iff the UAV-to-agent segment crosses no occluded grid cell.

    The 3-D segment is checked via its ground projection, sampled at
    quarter-cell resolution.
    """
    if not occlusion.any():
        return True
    ux, uy, _ = cfg.uav_position
    dx = position[0] - ux
    dy = position[1] - uy
    length = math.hypot(dx, dy)
    n_samples = max(2, int(length / (cfg.cell_size / 4.0)) + 1)
    rows, cols = occlusion.shape
    for i in range(n_samples + 1):
        t = i / n_samples
        x = ux + t * dx
        y = uy + t * dy
        c = min(cols - 1, max(0, int(x / cfg.cell_size)))
        r = min(rows - 1, max(0, int(y / cfg.cell_size)))
        if occlusion[r, c]:
            return False
    return True


def init_world(cfg: ScenarioConfig, seed: int) -> list[AgentState]:
    """Sample the initial agent population; deterministic for a fixed seed."""
    rng = np.random.default_rng(seed)
    occlusion = cfg.occlusion_grid()
    agents = []
    for n in range(cfg.n_agents):
        position = np.array([
            rng.uniform(0.0, cfg.arena_size[0]),
            rng.uniform(0.0, cfg.arena_size[1]),
        ])
        sem = SemanticType(int(rng.integers(N_SEMANTIC_TYPES)))
        act = ActivityClass(int(rng.integers(N_ACTIVITY_CLASSES)))
        speed = rng.uniform(0.2, 1.0) * cfg.max_speed[sem]
        direction = rng.uniform(0.0, 2.0 * math.pi)
        velocity = speed * np.array([math.cos(direction), math.sin(direction)])
        heading = direction
        if cfg.heading_noise > 0:
            heading += rng.normal(0.0, cfg.heading_noise)
        agents.append(AgentState(
            id=n,
            position=position,
            velocity=velocity,
            heading_true=wrap_angle(heading),
            profile=SemanticProfile(sem=sem, act=act),
            los=line_of_sight(position, cfg, occlusion),
        ))
    return agents


def _reflect(coord: float, vel: float, limit: float) -> tuple[float, float]:
    if coord < 0.0:
        return -coord, -vel
    if coord > limit:
        return 2.0 * limit - coord, -vel
    return coord, vel


def step_kinematics(agents: list[AgentState], cfg: ScenarioConfig,
                    seed_stream: np.random.Generator,
                    transition: np.ndarray | None = None) -> list[AgentState]:
    """Advance all agents by one slot.

    Constant-velocity motion with reflective arena boundaries, small Gaussian
    heading jitter, and Markov activity transitions.  LoS is recomputed from
    the occlusion grid.  The per-agent offset between heading and motion
    direction is preserved across steps.
    """
    if transition is None:
        transition = activity_transition_matrix()
    occlusion = cfg.occlusion_grid()
    dt = cfg.slot_duration
    out = []
    for agent in agents:
        x = agent.position[0] + agent.velocity[0] * dt
        y = agent.position[1] + agent.velocity[1] * dt
        vx, vy = agent.velocity
        x, vx = _reflect(x, vx, cfg.arena_size[0])
        y, vy = _reflect(y, vy, cfg.arena_size[1])
        old_dir = math.atan2(agent.velocity[1], agent.velocity[0])
        heading_offset = agent.heading_true - old_dir
        if cfg.heading_jitter > 0:
            jitter = seed_stream.normal(0.0, cfg.heading_jitter)
            cos_j, sin_j = math.cos(jitter), math.sin(jitter)
            vx, vy = vx * cos_j - vy * sin_j, vx * sin_j + vy * cos_j
        new_dir = math.atan2(vy, vx)
        act_now = agent.profile.act
        act_next = ActivityClass(int(
            seed_stream.choice(N_ACTIVITY_CLASSES, p=transition[act_now])
        ))
        position = np.array([x, y])
        out.append(AgentState(
            id=agent.id,
            position=position,
            velocity=np.array([vx, vy]),
            heading_true=wrap_angle(new_dir + heading_offset),
            profile=SemanticProfile(sem=agent.profile.sem, act=act_next),
            los=line_of_sight(position, cfg, occlusion),
        ))
    return out
