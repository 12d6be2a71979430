import json

import pytest

from gemflex.game import SubLevelId
from gemflex.profiles import (
    DuplicateProfileError,
    ProfileStore,
    StoreFormatError,
    UnknownProfileError,
)
from gemflex.rules import Arm, ExerciseKind


@pytest.fixture
def store(tmp_path):
    return ProfileStore(str(tmp_path / "profiles.json"))


def create_sample(store, name="Sami", reps=5, profile_id=None):
    return store.create(
        name, ExerciseKind.ELBOW_FLEX_EXT, Arm.RIGHT, reps, age=9, profile_id=profile_id
    )


class TestCrud:
    def test_create_then_get_round_trip(self, store):
        created = create_sample(store)
        loaded = store.get(created.id)
        assert loaded == created

    def test_update_survives_reload(self, store, tmp_path):
        profile = create_sample(store, reps=5)
        store.update(profile.id, repetitions=8)
        fresh = ProfileStore(str(tmp_path / "profiles.json"))
        assert fresh.get(profile.id).repetitions == 8

    def test_delete_then_get_unknown(self, store):
        profile = create_sample(store)
        store.delete(profile.id)
        with pytest.raises(UnknownProfileError):
            store.get(profile.id)

    def test_duplicate_id_rejected(self, store):
        create_sample(store, profile_id="kid1")
        with pytest.raises(DuplicateProfileError):
            create_sample(store, name="Other", profile_id="kid1")

    def test_unknown_update_and_delete(self, store):
        with pytest.raises(UnknownProfileError):
            store.update("nope", repetitions=3)
        with pytest.raises(UnknownProfileError):
            store.delete("nope")

    def test_list_sorted_by_name(self, store):
        create_sample(store, name="Zay")
        create_sample(store, name="Amal")
        create_sample(store, name="Mira")
        assert [p.name for p in store.list()] == ["Amal", "Mira", "Zay"]

    def test_repetitions_validated(self, store):
        with pytest.raises(ValueError):
            create_sample(store, reps=0)


class TestDurability:
    def test_save_load_identity(self, store, tmp_path):
        profiles = [create_sample(store, name=f"kid{i}", reps=i + 1) for i in range(4)]
        reloaded = ProfileStore(str(tmp_path / "profiles.json")).list()
        assert sorted(reloaded, key=lambda p: p.id) == sorted(profiles, key=lambda p: p.id)

    def test_missing_file_reads_empty(self, tmp_path):
        assert ProfileStore(str(tmp_path / "absent.json")).list() == []

    def test_document_shape(self, store, tmp_path):
        create_sample(store)
        doc = json.loads((tmp_path / "profiles.json").read_text())
        assert doc["version"] == 1
        record = doc["profiles"][0]
        assert set(record) >= {
            "id", "name", "age", "exercise", "arm", "repetitions",
            "progress", "createdAt", "updatedAt",
        }

    def test_unknown_fields_preserved_on_rewrite(self, store, tmp_path):
        profile = create_sample(store)
        path = tmp_path / "profiles.json"
        doc = json.loads(path.read_text())
        doc["clinicNote"] = "weekly review"
        doc["profiles"][0]["therapist"] = "Dr. Nasser"
        path.write_text(json.dumps(doc))

        store.update(profile.id, repetitions=9)
        rewritten = json.loads(path.read_text())
        assert rewritten["clinicNote"] == "weekly review"
        assert rewritten["profiles"][0]["therapist"] == "Dr. Nasser"
        assert rewritten["profiles"][0]["repetitions"] == 9

    def test_malformed_store_reports_path_and_line(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"version": 1,\n "profiles": [}\n')
        with pytest.raises(StoreFormatError) as exc_info:
            ProfileStore(str(path)).list()
        assert "broken.json" in str(exc_info.value)
        assert exc_info.value.line == 2

    def test_version_field_required(self, tmp_path):
        path = tmp_path / "nover.json"
        path.write_text('{"profiles": []}')
        with pytest.raises(StoreFormatError, match="version"):
            ProfileStore(str(path)).list()

    def test_no_partial_writes_left_behind(self, store, tmp_path):
        create_sample(store)
        leftovers = [p for p in tmp_path.iterdir() if p.suffix == ".tmp"]
        assert leftovers == []


class TestProgress:
    def test_record_progress_raises_high_water_mark(self, store):
        profile = create_sample(store)
        store.record_progress(profile.id, SubLevelId(1, 3))
        store.record_progress(profile.id, SubLevelId(1, 2))  # lower, ignored
        assert store.get(profile.id).progress == SubLevelId(1, 3)
        store.record_progress(profile.id, SubLevelId(2, 1))
        assert store.get(profile.id).progress == SubLevelId(2, 1)

    def test_progress_round_trips_through_file(self, store, tmp_path):
        profile = create_sample(store)
        store.record_progress(profile.id, SubLevelId(2, 12))
        fresh = ProfileStore(str(tmp_path / "profiles.json"))
        assert fresh.get(profile.id).progress == SubLevelId(2, 12)
