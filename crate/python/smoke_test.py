"""Smoke test for the lyricav_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/py
"""

import os
import tempfile

import lyricav_py as lv

VOCAB_A = "山水云月风花雪夜江舟"
VOCAB_B = "铁钢城车灯楼街路霓虹"


def separable(per_author=30):
    songs = []
    for author, vocab, punct in (("甲", VOCAB_A, "，"), ("乙", VOCAB_B, "!")):
        for k in range(per_author):
            lines = []
            for i in range(6):
                n = 5 + (k + i) % 5
                lines.append("".join(vocab[(k * 7 + i * 3 + j * j) % 10] for j in range(n)) + punct)
            songs.append(lv.Song(f"{author}{k}", f"{author}{k}", [author], lines, genres=["Life & Reflection"]))
    g = ["Life & Reflection"]
    pairs = []
    for k in range(per_author):
        nxt = lambda a, d: f"{a}{(k + d) % per_author}"
        pairs.append(lv.Pair(f"甲{k}", nxt("甲", 1), 1, "per-genre", g, "train"))
        pairs.append(lv.Pair(f"乙{k}", nxt("乙", 3), 1, "per-genre", g, "train"))
        pairs.append(lv.Pair(f"甲{k}", f"乙{k}", 0, "per-genre", g, "train"))
        pairs.append(lv.Pair(f"甲{k}", nxt("乙", 5), 0, "per-genre", g, "train"))
    return songs, pairs


def main():
    assert lv.clean_lyrics("[00:12.00]作词：某人\n歌词一行") == ["某人", "歌词一行"]
    assert lv.parse_genre_response("流派：[社会与现实]") == ["Society & Reality"]
    assert lv.parse_verdict("...\n1") == 1
    assert "[Text 1]" in lv.build_attrib_prompt("a", "b", language="en")

    m = lv.compute_metrics([1, 1, 0, 0], [1, 1, 1, 1])
    assert abs(m.f1_macro - 1 / 3) < 1e-12, m

    songs, pairs = separable()
    stats = lv.length_stats(songs)
    assert stats["min"] == 6 and stats["max"] == 6, stats

    model = lv.train(pairs, songs, epochs=10, learning_rate=1e-2, warmup_steps=5,
                     eval_interval_steps=5, seed=11, init_seed=1)
    assert model.best_validation_macro_f1 >= 0.9, model.best_validation_macro_f1
    predictions = model.predict(pairs, songs)
    scored = lv.compute_metrics([p.label for p in pairs], predictions)
    assert scored.f1_macro >= 0.9, scored

    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "model.json")
        model.save(path)
        again = lv.ContrastiveModel.load(path)
        assert again.threshold == model.threshold
        assert again.predict(pairs, songs) == predictions

    report = lv.group_report(pairs, predictions, format="csv")
    assert report.splitlines()[0].startswith("genre,mode,accuracy")
    print(f"smoke test passed: threshold {model.threshold:.2f}, macro F1 {scored.f1_macro:.4f}")


if __name__ == "__main__":
    main()
