/*
 * Copyright 2026 The alspg Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "alspg/bench/server.hpp"

#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>

#include <iostream>
#include <thread>

namespace alspg::bench {

namespace net = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;

namespace {

void serve_connection(tcp::socket socket, PlaygroundConfig config) {
  try {
    websocket::stream<tcp::socket> ws(std::move(socket));
    ws.set_option(websocket::stream_base::decorator(
        [](websocket::response_type &res) { res.set(beast::http::field::server, "alspg-playground"); }));
    ws.accept();
    ws.text(true);
    PlaygroundSession session(config);
    beast::flat_buffer buffer;
    for (;;) {
      buffer.clear();
      ws.read(buffer);
      const std::string reply = ws.got_text()
                                    ? session.handle_text(beast::buffers_to_string(buffer.data()))
                                    : protocol_error("", "binary frames are not supported").dump();
      ws.write(net::buffer(reply));
    }
  } catch (const beast::system_error &e) {
    if (e.code() != websocket::error::closed && e.code() != net::error::eof &&
        e.code() != net::error::connection_reset) {
      std::cerr << "playground: connection ended: " << e.code().message() << "\n";
    }
  } catch (const std::exception &e) {
    std::cerr << "playground: connection ended: " << e.what() << "\n";
  }
}

}  // namespace

struct PlaygroundServer::Impl {
  PlaygroundConfig config;
  net::io_context io;
  tcp::acceptor acceptor{io};

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      std::thread(serve_connection, std::move(socket), config).detach();
      accept();
    });
  }
};

PlaygroundServer::PlaygroundServer(PlaygroundConfig config, unsigned short port, std::string address)
    : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  const tcp::endpoint ep(net::ip::make_address(address), port);
  impl_->acceptor.open(ep.protocol());
  impl_->acceptor.set_option(net::socket_base::reuse_address(true));
  impl_->acceptor.bind(ep);
  impl_->acceptor.listen();
}

PlaygroundServer::~PlaygroundServer() { stop(); }

unsigned short PlaygroundServer::port() const { return impl_->acceptor.local_endpoint().port(); }

void PlaygroundServer::run() {
  impl_->accept();
  impl_->io.run();
}

void PlaygroundServer::stop() {
  net::post(impl_->io, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
  });
  impl_->io.stop();
}

}  // namespace alspg::bench
