#include <benchmark/benchmark.h>

#include "ramct/config.hpp"
#include "ramct/synth.hpp"
#include "ramct/tracker.hpp"

using namespace ramct;

namespace {

void BM_ExtractChannels(benchmark::State& state) {
    const SynthSequence seq = synth_generate(SynthPreset::clean, 2, 3);
    const BoundingBox region{40, 20, 96, 96};
    for (auto _ : state) {
        benchmark::DoNotOptimize(extract_channels(seq.frames[0], region, 4, 9));
    }
}
BENCHMARK(BM_ExtractChannels);

void BM_TrainFilter(benchmark::State& state) {
    const SynthSequence seq = synth_generate(SynthPreset::clean, 2, 3);
    RunConfig cfg;
    TrackState st = init_track_state(seq.boxes[0], cfg);
    const Frame patch = extract_patch(seq.frames[0], seq.boxes[0].cx(), seq.boxes[0].cy(),
                                      st.tmpl_w, st.tmpl_h, st.tmpl_w, st.tmpl_h);
    const ChannelStack feats = extract_channels(
        patch, {0, 0, double(st.tmpl_w), double(st.tmpl_h)}, st.cell_size, st.bins);
    for (auto _ : state) {
        TrackState fresh = st;
        train_filter(fresh, feats, fresh.label, cfg.solver);
        benchmark::DoNotOptimize(fresh);
    }
    state.SetLabel(std::to_string(st.cells_h) + "x" + std::to_string(st.cells_w) + " cells");
}
BENCHMARK(BM_TrainFilter)->Unit(benchmark::kMillisecond);

void BM_Detect(benchmark::State& state) {
    const SynthSequence seq = synth_generate(SynthPreset::clean, 2, 3);
    RunConfig cfg;
    TrackState st = init_track_state(seq.boxes[0], cfg);
    const Frame patch = extract_patch(seq.frames[0], seq.boxes[0].cx(), seq.boxes[0].cy(),
                                      st.tmpl_w, st.tmpl_h, st.tmpl_w, st.tmpl_h);
    const ChannelStack feats = extract_channels(
        patch, {0, 0, double(st.tmpl_w), double(st.tmpl_h)}, st.cell_size, st.bins);
    train_filter(st, feats, st.label, cfg.solver);
    for (auto _ : state) {
        benchmark::DoNotOptimize(detect(st, feats));
    }
}
BENCHMARK(BM_Detect);

void BM_TrackSequence(benchmark::State& state) {
    const int frames = static_cast<int>(state.range(0));
    const SynthSequence seq = synth_generate(SynthPreset::clean, frames, 3);
    RunConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(track_sequence(seq.frames, seq.boxes[0], cfg));
    }
    state.SetItemsProcessed(state.iterations() * frames);
}
BENCHMARK(BM_TrackSequence)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
