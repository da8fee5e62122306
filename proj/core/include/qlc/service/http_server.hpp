#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "qlc/service/api.hpp"

namespace qlc::service {

// Serves a Service over HTTP/1.1. Requests under /api/ go to Service::handle;
// anything else is looked up in the optional static directory.
class HttpServer {
public:
    explicit HttpServer(Service& service, std::optional<std::filesystem::path> static_dir = std::nullopt);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Binds without accepting yet. Port 0 picks a free port. Returns the bound port.
    int bind(const std::string& host, int port);
    // Blocks until stop() is called.
    void run();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace qlc::service
