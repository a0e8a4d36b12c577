// Command-line front end; talks to the shared library through the C API only.

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seglab.h"

namespace {

// "1,3,5-7,all,line,path.json" -> expanded token list
std::vector<std::string> expand_bc_tokens(const std::vector<std::string>& raw) {
    std::vector<std::string> out;
    for (const auto& chunk : raw) {
        std::stringstream ss(chunk);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            if (tok == "all") {
                for (int i = 1; i <= 9; ++i) out.push_back(std::to_string(i));
                continue;
            }
            auto dash = tok.find('-');
            if (dash != std::string::npos && dash > 0 && dash + 1 < tok.size() &&
                std::isdigit(static_cast<unsigned char>(tok[0])) &&
                std::isdigit(static_cast<unsigned char>(tok[dash + 1]))) {
                int a = std::stoi(tok.substr(0, dash));
                int b = std::stoi(tok.substr(dash + 1));
                for (int i = a; i <= b; ++i) out.push_back(std::to_string(i));
                continue;
            }
            out.push_back(tok);
        }
    }
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

int exit_code_for(seglab_status st) {
    switch (st) {
        case SEGLAB_OK: return 0;
        case SEGLAB_ERR_INVARIANT: return 2;
        case SEGLAB_ERR_CONVERGENCE: return 3;
        case SEGLAB_ERR_IO: return 4;
        default: return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"seglab: penalized elliptic segregation systems and their free boundaries"};

    std::vector<std::string> bc_raw{"all"};
    int n = 201;
    double epsilon = 1e-10;
    std::string delta = "auto";
    std::string systems = "a,b,limit,predicted";
    std::string out_dir;
    std::string sweep_arg;
    int jobs = 1;
    double band = 0.0;
    bool quiet = false;
    bool version = false;

    app.add_option("--bc", bc_raw,
                   "Boundary configurations: ids 1-9, ranges (1-9), 'all', "
                   "'line' (interval example), or a spec JSON path");
    app.add_option("--n", n, "Nodes per axis (default 201, h = 0.01 on [-1,1]^2)");
    app.add_option("--epsilon", epsilon, "Penalty parameter (default 1e-10)");
    app.add_option("--delta", delta,
                   "Interface threshold, a number or 'auto' (= sqrt(epsilon))");
    app.add_option("--systems", systems,
                   "Comma list among a,b,limit,predicted (default all)");
    app.add_option("--out", out_dir, "Output directory (omit: report to stdout only)");
    app.add_option("--sweep", sweep_arg, "Parameter sweep, e.g. epsilon=1e-4,1e-6,1e-8");
    app.add_option("--jobs", jobs, "Worker pool size for independent runs");
    app.add_option("--band", band, "Classification band for the prediction (default 0)");
    app.add_flag("--quiet", quiet, "Suppress the report echo on stdout");
    app.add_flag("--version", version, "Print version and exit");

    CLI11_PARSE(app, argc, argv);

    if (version) {
        std::printf("%s\n", seglab_version());
        return 0;
    }

    auto bcs = expand_bc_tokens(bc_raw);
    if (bcs.empty()) {
        std::fprintf(stderr, "error: no boundary configurations given\n");
        return 1;
    }

    std::ostringstream m;
    m << "{\"bcs\":[";
    for (size_t i = 0; i < bcs.size(); ++i)
        m << (i ? "," : "") << "\"" << json_escape(bcs[i]) << "\"";
    m << "],\"n\":" << n << ",\"epsilon\":" << epsilon;
    if (delta == "auto")
        m << ",\"delta\":\"auto\"";
    else
        m << ",\"delta\":" << delta;
    m << ",\"systems\":[";
    {
        std::stringstream ss(systems);
        std::string tok;
        bool first = true;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            m << (first ? "" : ",") << "\"" << json_escape(tok) << "\"";
            first = false;
        }
    }
    m << "],\"band\":" << band << ",\"out\":\"" << json_escape(out_dir)
      << "\",\"jobs\":" << jobs << "}";
    std::string manifest = m.str();

    if (!sweep_arg.empty()) {
        auto eq = sweep_arg.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "error: --sweep expects axis=v1,v2,...\n");
            return 1;
        }
        std::string axis = sweep_arg.substr(0, eq);
        std::vector<double> values;
        std::stringstream ss(sweep_arg.substr(eq + 1));
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) values.push_back(std::stod(tok));
        char* csv = nullptr;
        seglab_status st = seglab_sweep(manifest.c_str(), axis.c_str(),
                                        values.data(), static_cast<int>(values.size()),
                                        &csv);
        if (st != SEGLAB_OK) {
            std::fprintf(stderr, "error: %s\n", seglab_last_error());
            return exit_code_for(st);
        }
        if (!quiet && csv) std::fputs(csv, stdout);
        seglab_string_free(csv);
        return 0;
    }

    char* report = nullptr;
    seglab_status st = seglab_run_experiment(manifest.c_str(), &report);
    if (report) {
        if (!quiet) std::fputs(report, stdout);
        seglab_string_free(report);
    }
    if (st != SEGLAB_OK)
        std::fprintf(stderr, "error: %s\n", seglab_last_error());
    return exit_code_for(st);
}
