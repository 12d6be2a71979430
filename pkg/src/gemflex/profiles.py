"""Persistent player profiles.

Single JSON document per store. Writes are atomic (temp file plus rename)
behind an advisory lock, so one writer at a time per store file and readers
never observe a half-written document. Unknown fields in the file are
preserved across rewrites.
"""

from __future__ import annotations

import fcntl
import json
import os
import tempfile
import uuid
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from typing import Any

from .game import SubLevelId
from .rules import Arm, ExerciseKind

STORE_VERSION = 1


class StoreError(Exception):
    pass


class StoreFormatError(StoreError):
    def __init__(self, path: str, message: str, line: int | None = None):
        where = f"{path}:{line}" if line is not None else path
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


class UnknownProfileError(StoreError):
    def __init__(self, profile_id: str):
        super().__init__(f"no profile with id {profile_id!r}")
        self.profile_id = profile_id


class DuplicateProfileError(StoreError):
    def __init__(self, profile_id: str):
        super().__init__(f"profile id {profile_id!r} already exists")
        self.profile_id = profile_id


@dataclass(frozen=True)
class Profile:
    id: str
    name: str
    exercise: ExerciseKind
    arm: Arm
    repetitions: int
    age: int | None = None
    progress: SubLevelId | None = None
    created_at: str = ""
    updated_at: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.repetitions}")


_KNOWN_KEYS = {"id", "name", "exercise", "arm", "repetitions", "age", "progress", "createdAt", "updatedAt"}


def _now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def _profile_to_record(profile: Profile) -> dict[str, Any]:
    record = dict(profile.extra)
    record.update(
        {
            "id": profile.id,
            "name": profile.name,
            "exercise": profile.exercise.value,
            "arm": profile.arm.value,
            "repetitions": profile.repetitions,
            "age": profile.age,
            "progress": [profile.progress.level, profile.progress.stage] if profile.progress else None,
            "createdAt": profile.created_at,
            "updatedAt": profile.updated_at,
        }
    )
    return record


def _record_to_profile(record: dict[str, Any], path: str) -> Profile:
    try:
        progress = record.get("progress")
        return Profile(
            id=str(record["id"]),
            name=str(record["name"]),
            exercise=ExerciseKind(record["exercise"]),
            arm=Arm(record["arm"]),
            repetitions=int(record["repetitions"]),
            age=record.get("age"),
            progress=SubLevelId(progress[0], progress[1]) if progress else None,
            created_at=record.get("createdAt", ""),
            updated_at=record.get("updatedAt", ""),
            extra={k: v for k, v in record.items() if k not in _KNOWN_KEYS},
        )
    except (KeyError, ValueError, TypeError, IndexError) as exc:
        raise StoreFormatError(path, f"bad profile record: {exc}") from exc


class ProfileStore:
    """CRUD over the profile document at a filesystem path.

    The file is created on first write; a missing file reads as empty.
    """

    def __init__(self, path: str):
        self.path = os.fspath(path)

    def _load(self) -> tuple[list[Profile], dict[str, Any]]:
        if not os.path.exists(self.path):
            return [], {}
        with open(self.path, "r", encoding="utf-8") as fh:
            text = fh.read()
        if not text.strip():
            return [], {}
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise StoreFormatError(self.path, exc.msg, exc.lineno) from exc
        if not isinstance(doc, dict) or "version" not in doc:
            raise StoreFormatError(self.path, "store document needs a top-level version field")
        if doc["version"] != STORE_VERSION:
            raise StoreFormatError(self.path, f"unsupported store version {doc['version']!r}")
        records = doc.get("profiles", [])
        if not isinstance(records, list):
            raise StoreFormatError(self.path, "profiles must be a list")
        profiles = [_record_to_profile(r, self.path) for r in records]
        top_extra = {k: v for k, v in doc.items() if k not in {"version", "profiles"}}
        return profiles, top_extra

    def _save(self, profiles: list[Profile], top_extra: dict[str, Any]) -> None:
        doc: dict[str, Any] = {"version": STORE_VERSION}
        doc.update(top_extra)
        doc["profiles"] = [_profile_to_record(p) for p in profiles]
        text = json.dumps(doc, indent=2, sort_keys=False) + "\n"
        directory = os.path.dirname(os.path.abspath(self.path))
        os.makedirs(directory, exist_ok=True)
        lock_path = self.path + ".lock"
        with open(lock_path, "w") as lock_fh:
            fcntl.flock(lock_fh, fcntl.LOCK_EX)
            try:
                fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".profiles-", suffix=".tmp")
                try:
                    with os.fdopen(fd, "w", encoding="utf-8") as tmp:
                        tmp.write(text)
                        tmp.flush()
                        os.fsync(tmp.fileno())
                    os.replace(tmp_path, self.path)
                except BaseException:
                    if os.path.exists(tmp_path):
                        os.unlink(tmp_path)
                    raise
            finally:
                fcntl.flock(lock_fh, fcntl.LOCK_UN)

    def create(
        self,
        name: str,
        exercise: ExerciseKind,
        arm: Arm,
        repetitions: int,
        age: int | None = None,
        profile_id: str | None = None,
    ) -> Profile:
        profiles, top_extra = self._load()
        pid = profile_id or uuid.uuid4().hex[:12]
        if any(p.id == pid for p in profiles):
            raise DuplicateProfileError(pid)
        now = _now()
        profile = Profile(
            id=pid,
            name=name,
            exercise=exercise,
            arm=arm,
            repetitions=repetitions,
            age=age,
            created_at=now,
            updated_at=now,
        )
        profiles.append(profile)
        self._save(profiles, top_extra)
        return profile

    def get(self, profile_id: str) -> Profile:
        for profile in self._load()[0]:
            if profile.id == profile_id:
                return profile
        raise UnknownProfileError(profile_id)

    def list(self) -> list[Profile]:
        return sorted(self._load()[0], key=lambda p: p.name)

    def update(self, profile_id: str, **changes: Any) -> Profile:
        profiles, top_extra = self._load()
        for i, profile in enumerate(profiles):
            if profile.id == profile_id:
                updated = replace(profile, updated_at=_now(), **changes)
                profiles[i] = updated
                self._save(profiles, top_extra)
                return updated
        raise UnknownProfileError(profile_id)

    def delete(self, profile_id: str) -> None:
        profiles, top_extra = self._load()
        remaining = [p for p in profiles if p.id != profile_id]
        if len(remaining) == len(profiles):
            raise UnknownProfileError(profile_id)
        self._save(remaining, top_extra)

    def record_progress(self, profile_id: str, completed: SubLevelId) -> Profile:
        """Raise the stored progress to a newly completed sublevel."""
        current = self.get(profile_id)
        if current.progress is None or completed > current.progress:
            return self.update(profile_id, progress=completed)
        return current
