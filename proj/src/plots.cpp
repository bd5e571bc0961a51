#include "tnet/plots.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tnet/linalg.hpp"

namespace fs = std::filesystem;

namespace tnet {

namespace {

int gray_level(double v, double vmin, double vmax) {
    if (!(vmax > vmin)) return 128;
    const double t = (v - vmin) / (vmax - vmin);
    return 230 - static_cast<int>(std::lround(205.0 * t));  // darker = larger
}

std::string svg_header(int w, int h, const std::string& title) {
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
    out << "<title>" << title << "</title>\n";
    return out.str();
}

}  // namespace

void write_heatmap_svg(const std::string& path, const std::vector<std::string>& labels,
                       const std::vector<std::vector<double>>& values,
                       const std::vector<std::vector<bool>>& present, const std::string& title) {
    const int n = static_cast<int>(labels.size());
    const int cell = 40, margin = 70;
    const int size = margin + n * cell + 20;

    double vmin = 0.0, vmax = 0.0;
    bool any = false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (present[i][j]) {
                if (!any) {
                    vmin = vmax = values[i][j];
                    any = true;
                } else {
                    vmin = std::min(vmin, values[i][j]);
                    vmax = std::max(vmax, values[i][j]);
                }
            }

    std::ofstream out(path, std::ios::binary);
    out.precision(17);
    out << svg_header(size, size, title);
    out << "<text x=\"10\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
    for (int i = 0; i < n; ++i) {
        out << "<text x=\"5\" y=\"" << (margin + i * cell + cell / 2 + 4)
            << "\" font-size=\"10\">" << labels[i] << "</text>\n";
        out << "<text x=\"" << (margin + i * cell + 4) << "\" y=\"" << (margin - 8)
            << "\" font-size=\"10\">" << labels[i] << "</text>\n";
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!present[i][j]) continue;
            const int g = gray_level(values[i][j], vmin, vmax);
            out << "<rect x=\"" << (margin + j * cell) << "\" y=\"" << (margin + i * cell)
                << "\" width=\"" << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << g << ','
                << g << ',' << g << ")\" stroke=\"black\" data-value=\"" << values[i][j]
                << "\"/>\n";
        }
    out << "</svg>\n";
}

void write_landscape_svg(const std::string& path, const Landscape& l, const std::string& title) {
    const int w = 640, h = 360, margin = 40;
    double tmin = 0.0, tmax = 1.0, vmax = 1.0;
    bool any = false;
    for (const auto& level : l.levels)
        for (const auto& [t, v] : level) {
            if (!any) {
                tmin = tmax = t;
                vmax = v;
                any = true;
            } else {
                tmin = std::min(tmin, t);
                tmax = std::max(tmax, t);
                vmax = std::max(vmax, v);
            }
        }
    if (tmax <= tmin) tmax = tmin + 1.0;
    if (vmax <= 0.0) vmax = 1.0;

    auto X = [&](double t) { return margin + (t - tmin) / (tmax - tmin) * (w - 2 * margin); };
    auto Y = [&](double v) { return h - margin - v / vmax * (h - 2 * margin); };

    std::ofstream out(path, std::ios::binary);
    out.precision(10);
    out << svg_header(w, h, title);
    out << "<text x=\"10\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << (h - margin) << "\" x2=\"" << (w - margin)
        << "\" y2=\"" << (h - margin) << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << (h - margin) << "\" stroke=\"black\"/>\n";
    for (int k = 0; k < l.level_count(); ++k) {
        const int shade = 30 + (200 * k) / std::max(1, l.level_count());
        out << "<polyline fill=\"none\" stroke=\"rgb(" << shade << ',' << shade << ",200)\" "
            << "stroke-width=\"1.5\" points=\"";
        for (const auto& [t, v] : l.levels[k]) out << X(t) << ',' << Y(v) << ' ';
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

void write_scatter_svg(const std::string& path, const std::vector<std::array<double, 2>>& pts,
                       const std::vector<int>& groups, const std::string& title) {
    const int w = 480, h = 480, margin = 40;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    if (!pts.empty()) {
        xmin = xmax = pts[0][0];
        ymin = ymax = pts[0][1];
        for (const auto& p : pts) {
            xmin = std::min(xmin, p[0]);
            xmax = std::max(xmax, p[0]);
            ymin = std::min(ymin, p[1]);
            ymax = std::max(ymax, p[1]);
        }
    }
    if (xmax <= xmin) xmax = xmin + 1.0;
    if (ymax <= ymin) ymax = ymin + 1.0;
    const char* palette[] = {"#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#2c3e50"};

    std::ofstream out(path, std::ios::binary);
    out.precision(10);
    out << svg_header(w, h, title);
    out << "<text x=\"10\" y=\"20\" font-size=\"14\">" << title << "</text>\n";
    for (size_t i = 0; i < pts.size(); ++i) {
        const double x = margin + (pts[i][0] - xmin) / (xmax - xmin) * (w - 2 * margin);
        const double y = h - margin - (pts[i][1] - ymin) / (ymax - ymin) * (h - 2 * margin);
        const int g = i < groups.size() ? groups[i] : 0;
        out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\""
            << palette[g % 6] << "\" data-group=\"" << g << "\"/>\n";
    }
    out << "</svg>\n";
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string tok;
    bool quoted = false;
    for (const char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            out.push_back(tok);
            tok.clear();
        } else {
            tok += c;
        }
    }
    out.push_back(tok);
    return out;
}

}  // namespace

std::vector<std::string> emit_plots(const std::string& artifacts_dir, const std::string& out_dir) {
    std::vector<std::string> written;
    if (!fs::exists(artifacts_dir)) return written;

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(artifacts_dir))
        if (entry.is_regular_file()) files.push_back(entry.path());
    const fs::path samples = fs::path(artifacts_dir) / "samples";
    if (fs::exists(samples))
        for (const auto& entry : fs::directory_iterator(samples))
            if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) return written;

    bool made_out = false;
    auto ensure_out = [&]() {
        if (!made_out) {
            fs::create_directories(out_dir);
            made_out = true;
        }
    };

    for (const auto& file : files) {
        const std::string name = file.filename().string();
        if (name.rfind("mean_", 0) == 0 && file.extension() == ".csv") {
            std::ifstream in(file);
            std::string line;
            if (!std::getline(in, line)) continue;
            const auto header = split_csv(line);
            if (header.empty() || header[0] != "p") continue;  // matrix layout only
            std::vector<std::string> labels(header.begin() + 1, header.end());
            const int n = static_cast<int>(labels.size());
            std::vector<std::vector<double>> values(n, std::vector<double>(n, 0.0));
            std::vector<std::vector<bool>> present(n, std::vector<bool>(n, false));
            int row = 0;
            while (std::getline(in, line) && row < n) {
                const auto toks = split_csv(line);
                for (int col = 0; col < n && col + 1 < static_cast<int>(toks.size()); ++col) {
                    if (toks[col + 1].empty()) continue;
                    values[row][col] = std::stod(toks[col + 1]);
                    present[row][col] = true;
                }
                ++row;
            }
            ensure_out();
            const std::string out_name = name.substr(0, name.size() - 4) + ".svg";
            write_heatmap_svg((fs::path(out_dir) / out_name).string(), labels, values, present,
                              name.substr(0, name.size() - 4));
            written.push_back(out_name);
        } else if (name.rfind("landscape_", 0) == 0 && file.extension() == ".csv") {
            std::ifstream in(file);
            const Landscape l = read_landscape_csv(in);
            ensure_out();
            const std::string out_name = name.substr(0, name.size() - 4) + ".svg";
            write_landscape_svg((fs::path(out_dir) / out_name).string(), l,
                                name.substr(0, name.size() - 4));
            written.push_back(out_name);
        } else if (name.rfind("dist_", 0) == 0 && file.extension() == ".csv") {
            std::ifstream in(file);
            std::string line;
            std::vector<int> groups;
            if (!std::getline(in, line)) continue;
            if (line.rfind("# groups=", 0) == 0)
                for (const auto& tok : split_csv(line.substr(9))) groups.push_back(std::stoi(tok));
            std::vector<std::vector<double>> rows;
            while (std::getline(in, line)) {
                if (line.empty()) continue;
                std::vector<double> row;
                for (const auto& tok : split_csv(line)) row.push_back(std::stod(tok));
                rows.push_back(std::move(row));
            }
            const int n = static_cast<int>(rows.size());
            if (n == 0) continue;
            SymMatrix dist(n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) dist.at(i, j) = rows[i][j];
            const auto coords = classical_mds(dist, 2);
            std::vector<std::array<double, 2>> pts(n);
            for (int i = 0; i < n; ++i) pts[i] = {coords[i][0], coords[i][1]};
            ensure_out();
            const std::string out_name = "mds_" + name.substr(5, name.size() - 9) + ".svg";
            write_scatter_svg((fs::path(out_dir) / out_name).string(), pts, groups,
                              "MDS of landscape distances: " + name);
            written.push_back(out_name);
        }
    }
    return written;
}

}  // namespace tnet
