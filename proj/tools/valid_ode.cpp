#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "vode/cases.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Validated ODE case studies"};
    vode::CaseConfig cfg;
    std::string output, format = "json";
    int order = 0, subdivisions = 0;
    double tolerance = 0.0;
    app.add_option("case", cfg.name, "case to run")->required()->check(CLI::IsMember(vode::case_names()));
    auto* o = app.add_option("--order", order, "Taylor order")->check(CLI::Range(2, 60));
    auto* t = app.add_option("--tolerance", tolerance, "per-step tolerance")->check(CLI::PositiveNumber);
    auto* n = app.add_option("--subdivisions", subdivisions, "subdivision count")->check(CLI::PositiveNumber);
    app.add_option("--output", output, "write here instead of stdout");
    app.add_option("--format", format, "json or csv-enclosures")->check(CLI::IsMember({"json", "csv-enclosures"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (o->count()) cfg.order = order;
    if (t->count()) cfg.tolerance = tolerance;
    if (n->count()) cfg.subdivisions = subdivisions;

    try {
        const auto start = std::chrono::steady_clock::now();
        const vode::CaseResult r = vode::run_case(cfg);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const std::string text =
            format == "json" ? r.certificate.dump() + "\n" : vode::enclosures_csv(cfg.name, r.rows);
        if (output.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(output);
            if (!(f << text)) {
                std::cerr << "valid-ode: cannot write " << output << "\n";
                return 2;
            }
        }
        for (const auto& c : r.certificate.checks)
            if (!c.pass) std::cerr << "FAILED: " << c.description << " " << vode::to_string(c.bound) << " " << c.op << " "
                                   << c.threshold << "\n";
        std::fprintf(stderr, "%s: %s in %.2f s\n", cfg.name.c_str(), r.certificate.overall ? "proved" : "not proved",
                     seconds);
        return r.certificate.overall ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "valid-ode: " << e.what() << "\n";
        return 2;
    }
}
