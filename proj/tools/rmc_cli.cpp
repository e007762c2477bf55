#include <iostream>

#include "commands.hpp"
#include "rmc/oracle.hpp"
#include "rmc/serialize.hpp"

int main(int argc, char** argv) {
    CLI::App app{"rank-metric trapping and LRPC key recovery toolkit"};
    app.set_version_flag("--version", rmc::kToolVersion);
    app.require_subcommand(1);
    auto run = rmc::cli::register_commands(app);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : rmc::cli::kParam;
    }
    try {
        return run();
    } catch (const rmc::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rmc::cli::kParam;
    } catch (const rmc::OracleRefused& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return rmc::cli::kRefused;
    } catch (const rmc::KeygenError& e) {
        std::cerr << "keygen failed: " << e.what() << "\n";
        return rmc::cli::kNotFound;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << "\n";
        return rmc::cli::kParam;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return rmc::cli::kParam;
    }
}
