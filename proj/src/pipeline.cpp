#include "tnet/pipeline.hpp"

namespace tnet {

PipelineResult run_pipeline(const Graph& g, int order, Convention convention,
                            const FitConfig& fit_cfg) {
    PipelineResult r;
    r.embedding = fit_lsm(g, fit_cfg);
    const double density = g.density();
    r.degenerate_fit = density <= 0.0 || density >= 1.0;
    const Filtration f = vr_filtration(r.embedding.positions, convention);
    r.diagram = order == 0 ? diagram_h0(f) : diagram_h1(f);
    r.landscape = build_landscape(drop_essential(r.diagram));
    return r;
}

PipelinePair run_pipeline_both_orders(const Graph& g, Convention convention,
                                      const FitConfig& fit_cfg) {
    PipelinePair r;
    r.embedding = fit_lsm(g, fit_cfg);
    const double density = g.density();
    r.degenerate_fit = density <= 0.0 || density >= 1.0;
    const Filtration f = vr_filtration(r.embedding.positions, convention);
    r.order0 = build_landscape(drop_essential(diagram_h0(f)));
    r.order1 = build_landscape(drop_essential(diagram_h1(f)));
    return r;
}

}  // namespace tnet
