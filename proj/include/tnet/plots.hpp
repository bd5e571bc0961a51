#pragma once

#include <string>
#include <vector>

#include "tnet/landscape.hpp"

namespace tnet {

// Lower-triangular heatmap of a labeled matrix. Cells carry a data-value
// attribute; fill darkness is monotone in the value (darker = larger).
void write_heatmap_svg(const std::string& path, const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& values,
                       const std::vector<std::vector<bool>>& present, const std::string& title);

void write_landscape_svg(const std::string& path, const Landscape& l, const std::string& title);

// 2-D scatter of points with integer group labels (classical MDS output).
void write_scatter_svg(const std::string& path, const std::vector<std::array<double, 2>>& pts,
                       const std::vector<int>& groups, const std::string& title);

// Render every recognized artifact file under artifacts_dir into SVGs in
// out_dir: mean matrices become heatmaps, sample distance matrices become MDS
// scatters, sample landscapes become line plots. Returns the file names
// written. An empty artifact directory produces no files.
std::vector<std::string> emit_plots(const std::string& artifacts_dir, const std::string& out_dir);

}  // namespace tnet
