#include "qlc/service/http_server.hpp"

#include <httplib.h>

namespace qlc::service {

struct HttpServer::Impl {
    explicit Impl(Service& s) : service(s) {}
    Service& service;
    httplib::Server server;
};

namespace {

void forward(Service& service, const httplib::Request& req, httplib::Response& res)
{
    HttpResponse out = service.handle(req.method, req.path, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
}

} // namespace

HttpServer::HttpServer(Service& service, std::optional<std::filesystem::path> static_dir)
    : impl_(std::make_unique<Impl>(service))
{
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        forward(impl_->service, req, res);
    };
    impl_->server.Get("/api/.*", handler);
    impl_->server.Post("/api/.*", handler);
    if (static_dir) {
        impl_->server.set_mount_point("/", static_dir->string());
    }
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    int bound = port == 0 ? impl_->server.bind_to_any_port(host) : port;
    if (port != 0 && !impl_->server.bind_to_port(host, port)) {
        bound = -1;
    }
    if (bound < 0) {
        throw Error("cannot bind " + host + ":" + std::to_string(port));
    }
    return bound;
}

void HttpServer::run()
{
    impl_->server.listen_after_bind();
}

void HttpServer::stop()
{
    if (impl_->server.is_running()) {
        impl_->server.stop();
    }
}

bool HttpServer::running() const
{
    return impl_->server.is_running();
}

} // namespace qlc::service
