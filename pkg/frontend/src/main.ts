import { ApiClient } from "./api.js";
import { initApp } from "./ui.js";

const serviceUrl =
  new URLSearchParams(window.location.search).get("service") ??
  "http://127.0.0.1:8642";

const app = initApp(document.getElementById("app")!, new ApiClient(serviceUrl));
void app.start();
