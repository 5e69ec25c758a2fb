using System;
using Acme.Logging;
using Shop.Business;
using Shop.Data.Entities;
using Shop.Web.Helpers;

namespace Shop.Web.Controllers
{
    /// <summary>
    /// Storefront order endpoints.
    /// </summary>
    public class OrderController : Controller
    {
        private OrderService orderService;
        private int pageSize = 20;

        public OrderController()
        {
            orderService = new OrderService();
        }

        public string SubmitOrder(int customerId, string sku, int quantity)
        {
            Logger.Info("SubmitOrder called"); // orderService.Cancel() is never called here
            Order order = orderService.CreateOrder(customerId, sku, quantity);
            bool placed = orderService.PlaceOrder(order);
            if (!placed)
            {
                return "error: \"order.Fail()\"";
            }
            return PriceFormatter.Format(order.Total);
        }

        public OrderSummary GetOrderSummary(int orderId)
        {
            /* summary lookup goes straight to the service:
               orderService.Summarize(orderId) */
            return orderService.Summarize(orderId);
        }
    }
}
