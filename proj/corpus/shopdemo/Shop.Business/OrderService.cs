using System;
using Acme.Logging;
using Shop.Business.Rules;
using Shop.Data;
using Shop.Data.Entities;
using Shop.Proxies.Payment;

namespace Shop.Business
{
    public class OrderService : BaseService, IOrderService
    {
        private OrderRepository repo;
        private InventoryService inventory;
        private PaymentGatewayProxy payment;
        private int retries;

        public OrderService()
        {
            repo = new OrderRepository();
            inventory = new InventoryService();
            payment = new PaymentGatewayProxy();
        }

        public Order CreateOrder(int customerId, string sku, int quantity)
        {
            var order = new Order(customerId);
            order.AddLine(sku, quantity, inventory.GetUnitPrice(sku));
            return order;
        }

        public bool PlaceOrder(Order order)
        {
            if (!inventory.Reserve(order))
            {
                this.Audit("reservation failed");
                return false;
            }
            decimal amount = PricingRules.ApplyDiscount(order.Total, order.CustomerId);
            string receipt = payment.Charge(order.CustomerId, amount);
            repo.Insert(order);
            this.Audit("placed " + receipt);
            return true;
        }

        public OrderSummary Summarize(int orderId)
        {
            Order order = repo.FindById(orderId);
            return new OrderSummary(orderId, order.Total);
        }
    }
}
