#pragma once

#include "tnet/graph.hpp"
#include "tnet/landscape.hpp"
#include "tnet/lsm.hpp"
#include "tnet/persistence.hpp"

namespace tnet {

struct PipelineResult {
    Embedding embedding;
    PersistenceDiagram diagram;
    Landscape landscape;
    bool degenerate_fit = false;  // empty/complete graph: alpha clamped
};

// graph -> LSM fit -> VR filtration of the embedding -> diagram -> landscape.
// Classes truncated at max_filtration are excluded from the landscape: their
// tent height is half the embedding diameter, which varies between graphs as
// scale noise and swamps the spanning-structure signal the comparison needs.
// Degenerate fits still produce a landscape, flagged.
PipelineResult run_pipeline(const Graph& g, int order, Convention convention = Convention::radius,
                            const FitConfig& fit_cfg = {});

// Both homology orders from a single fit and filtration.
struct PipelinePair {
    Embedding embedding;
    Landscape order0;
    Landscape order1;
    bool degenerate_fit = false;
};

PipelinePair run_pipeline_both_orders(const Graph& g, Convention convention = Convention::radius,
                                      const FitConfig& fit_cfg = {});

}  // namespace tnet
